#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gralg/jet.hpp"
#include "gralg/types.hpp"

namespace gralg {

// Expression tree for metric component formulas.  Exponents are
// restricted to numeric literals at parse time, so `pow_int` carries an
// integer and `pow_real` a double.
struct Expr {
  enum class Kind { number, ident, neg, add, sub, mul, div, pow_int, pow_real, call };

  Kind kind = Kind::number;
  double number = 0.0;
  int iexp = 0;
  std::string name;
  std::vector<Expr> args;

  static Expr num(double v) {
    Expr e;
    e.kind = Kind::number;
    e.number = v;
    return e;
  }
  static Expr ident(std::string n) {
    Expr e;
    e.kind = Kind::ident;
    e.name = std::move(n);
    return e;
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.number != b.number || a.iexp != b.iexp || a.name != b.name ||
        a.args.size() != b.args.size())
      return false;
    for (size_t i = 0; i < a.args.size(); ++i)
      if (!(a.args[i] == b.args[i])) return false;
    return true;
  }
};

struct MetricSpec {
  std::string name;
  std::array<std::string, 4> coords;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, Expr>> lets;
  std::array<std::array<std::optional<Expr>, 4>, 4> comp;  // filled for mu <= nu

  bool has_param(const std::string& n) const {
    for (auto& p : params)
      if (p.first == n) return true;
    return false;
  }
};

// Diagnostics carry "file:line:col: message" in what().
MetricSpec parse_metric(std::string_view text, std::string_view filename);
MetricSpec parse_metric_file(const std::string& path);

std::string print_expr(const Expr& e);
std::string print_metric(const MetricSpec& spec);

// Effective parameter values: spec defaults plus overrides; unknown
// override names are precondition errors.
std::vector<std::pair<std::string, double>> resolve_params(
    const MetricSpec& spec, const std::map<std::string, double>& overrides);

namespace dsl_detail {

template <typename S>
const S* env_lookup(const std::vector<std::pair<std::string, S>>& env, const std::string& name) {
  for (auto& kv : env)
    if (kv.first == name) return &kv.second;
  return nullptr;
}

}  // namespace dsl_detail

// Generic evaluation: S is double or a (nested) jet.  Domain guards
// compare value slots, so the guard decisions are depth independent.
template <typename S>
S eval_expr(const Expr& e, const std::vector<std::pair<std::string, S>>& env, const Vec4d& at) {
  using Kind = Expr::Kind;
  switch (e.kind) {
    case Kind::number:
      return S(e.number);
    case Kind::ident: {
      const S* v = dsl_detail::env_lookup(env, e.name);
      if (!v) throw EvalError("unbound identifier '" + e.name + "'", at);
      return *v;
    }
    case Kind::neg:
      return -eval_expr(e.args[0], env, at);
    case Kind::add:
      return eval_expr(e.args[0], env, at) + eval_expr(e.args[1], env, at);
    case Kind::sub:
      return eval_expr(e.args[0], env, at) - eval_expr(e.args[1], env, at);
    case Kind::mul:
      return eval_expr(e.args[0], env, at) * eval_expr(e.args[1], env, at);
    case Kind::div: {
      S num = eval_expr(e.args[0], env, at);
      S den = eval_expr(e.args[1], env, at);
      if (value_of(den) == 0.0) throw EvalError("division by zero", at);
      return num / den;
    }
    case Kind::pow_int: {
      S base = eval_expr(e.args[0], env, at);
      if (e.iexp < 0 && value_of(base) == 0.0) throw EvalError("division by zero", at);
      return pow_int(base, e.iexp);
    }
    case Kind::pow_real: {
      S base = eval_expr(e.args[0], env, at);
      if (!(value_of(base) > 0.0)) throw EvalError("non-positive base of real power", at);
      return pow_real(base, e.number);
    }
    case Kind::call: {
      S arg = eval_expr(e.args[0], env, at);
      if (e.name == "sqrt") {
        if (!(value_of(arg) > 0.0)) throw EvalError("sqrt of non-positive argument", at);
        return sqrt(arg);
      }
      if (e.name == "sin") return sin(arg);
      if (e.name == "cos") return cos(arg);
      if (e.name == "tan") {
        using std::cos;
        if (cos(value_of(arg)) == 0.0) throw EvalError("tan at a pole", at);
        return tan(arg);
      }
      if (e.name == "exp") return exp(arg);
      if (e.name == "log") {
        if (!(value_of(arg) > 0.0)) throw EvalError("log of non-positive argument", at);
        return log(arg);
      }
      throw EvalError("unknown function '" + e.name + "'", at);
    }
  }
  throw EvalError("malformed expression", at);
}

// Lower-index metric components at a point; symmetric fill, absent
// components are zero.
template <typename S>
Mat4<S> eval_metric_components(const MetricSpec& spec,
                               const std::vector<std::pair<std::string, double>>& params,
                               const Vec4<S>& x) {
  Vec4d at;
  for (int i = 0; i < 4; ++i) at[i] = value_of(x[i]);

  std::vector<std::pair<std::string, S>> env;
  env.reserve(4 + params.size() + spec.lets.size());
  for (int i = 0; i < 4; ++i) env.emplace_back(spec.coords[i], x[i]);
  for (auto& p : params) env.emplace_back(p.first, S(p.second));
  for (auto& l : spec.lets) env.emplace_back(l.first, eval_expr(l.second, env, at));

  Mat4<S> g;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      S v = spec.comp[mu][nu] ? eval_expr(*spec.comp[mu][nu], env, at) : S(0.0);
      g(mu, nu) = v;
      g(nu, mu) = v;
    }
  return g;
}

}  // namespace gralg
