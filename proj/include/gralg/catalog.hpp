#pragma once

#include <array>
#include <string>
#include <vector>

#include "gralg/metric_dsl.hpp"

namespace gralg {

// Coordinate sampling box; lo == hi pins a coordinate.
struct Box {
  std::array<double, 4> lo{};
  std::array<double, 4> hi{};
};

struct CatalogEntry {
  std::string name;
  std::string source;
  Box default_box;
};

const std::vector<CatalogEntry>& metric_catalog();
const CatalogEntry* find_catalog_metric(const std::string& name);

// Parses a catalog entry (they are stored as DSL text and must parse).
MetricSpec catalog_spec(const CatalogEntry& entry);

}  // namespace gralg
