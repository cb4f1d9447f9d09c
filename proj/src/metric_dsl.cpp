#include "gralg/metric_dsl.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace gralg {

namespace {

const std::set<std::string> kBuiltinFunctions = {"sqrt", "sin", "cos", "tan", "exp", "log"};

struct Token {
  enum class Type { ident, number, string, punct, end };
  Type type = Type::end;
  std::string text;
  double num = 0.0;
  bool is_integer = false;
  int line = 1, col = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view filename) : text_(text), filename_(filename) {}

  [[noreturn]] void fail(int line, int col, const std::string& msg) const {
    std::ostringstream oss;
    oss << filename_ << ":" << line << ":" << col << ": " << msg;
    throw ParseError(oss.str());
  }

  Token next() {
    skip_blanks();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;

    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        advance();
      t.type = Token::Type::ident;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      bool integral = true;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        integral = false;
        advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        integral = false;
        advance();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail(t.line, t.col, "malformed number: missing exponent digits");
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      }
      t.type = Token::Type::number;
      t.text = std::string(text_.substr(start, pos_ - start));
      t.num = std::strtod(t.text.c_str(), nullptr);
      t.is_integer = integral;
      return t;
    }
    if (c == '"') {
      advance();
      size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') advance();
      if (pos_ >= text_.size() || text_[pos_] == '\n') fail(t.line, t.col, "unterminated string");
      t.type = Token::Type::string;
      t.text = std::string(text_.substr(start, pos_ - start));
      advance();
      return t;
    }
    static const std::string punct = "{}[](),;=+-*/^:";
    if (punct.find(c) != std::string::npos) {
      t.type = Token::Type::punct;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    fail(t.line, t.col, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string filename_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view filename) : lex_(text, filename) { bump(); }

  MetricSpec parse() {
    expect_ident("metric");
    if (cur_.type != Token::Type::string) fail(cur_, "expected quoted metric name");
    spec_.name = cur_.text;
    bump();
    expect_punct("{");

    bool saw_coords = false;
    bool saw_assign = false;
    int n_components = 0;
    while (!at_punct("}")) {
      if (cur_.type != Token::Type::ident)
        fail(cur_, "expected a header or a component assignment");
      if (cur_.text == "coords" || cur_.text == "params" || cur_.text == "let") {
        if (saw_assign) fail(cur_, "header after component assignment");
        if (cur_.text == "coords") {
          if (saw_coords) fail(cur_, "duplicate coords header");
          parse_coords();
          saw_coords = true;
        } else if (cur_.text == "params") {
          if (!saw_coords) fail(cur_, "coords header must come first");
          parse_params();
        } else {
          if (!saw_coords) fail(cur_, "coords header must come first");
          parse_let();
        }
      } else if (cur_.text == "g") {
        if (!saw_coords) fail(cur_, "coords header must come first");
        parse_assign();
        saw_assign = true;
        ++n_components;
      } else {
        fail(cur_, "expected 'coords', 'params', 'let' or 'g[...]', got '" + cur_.text + "'");
      }
    }
    expect_punct("}");
    if (cur_.type != Token::Type::end) fail(cur_, "trailing input after metric block");
    if (!saw_coords) fail(cur_, "missing coords header");
    if (n_components == 0) fail(cur_, "metric has no components");
    return spec_;
  }

 private:
  void bump() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const Token& t, const std::string& msg) { lex_.fail(t.line, t.col, msg); }

  bool at_punct(const char* p) const {
    return cur_.type == Token::Type::punct && cur_.text == p;
  }

  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(cur_, std::string("expected '") + p + "'");
    bump();
  }

  void expect_ident(const char* name) {
    if (cur_.type != Token::Type::ident || cur_.text != name)
      fail(cur_, std::string("expected '") + name + "'");
    bump();
  }

  std::string take_name() {
    if (cur_.type != Token::Type::ident) fail(cur_, "expected identifier");
    std::string n = cur_.text;
    bump();
    return n;
  }

  void declare(const Token& at, const std::string& n) {
    if (known_.count(n)) fail(at, "duplicate name '" + n + "'");
    known_.insert(n);
  }

  void parse_coords() {
    bump();
    expect_punct(":");
    for (int i = 0; i < 4; ++i) {
      Token at = cur_;
      spec_.coords[i] = take_name();
      declare(at, spec_.coords[i]);
      if (i < 3) expect_punct(",");
    }
    expect_punct(";");
  }

  void parse_params() {
    bump();
    expect_punct(":");
    while (true) {
      Token at = cur_;
      std::string n = take_name();
      declare(at, n);
      expect_punct("=");
      double v = take_number();
      spec_.params.emplace_back(n, v);
      if (at_punct(",")) {
        bump();
        continue;
      }
      break;
    }
    expect_punct(";");
  }

  double take_number() {
    bool negate = false;
    if (at_punct("-")) {
      negate = true;
      bump();
    }
    if (cur_.type != Token::Type::number) fail(cur_, "expected a number");
    double v = cur_.num;
    bump();
    return negate ? -v : v;
  }

  void parse_let() {
    bump();
    Token at = cur_;
    std::string n = take_name();
    expect_punct("=");
    Expr e = parse_expr();
    expect_punct(";");
    declare(at, n);  // a let may not reference itself
    spec_.lets.emplace_back(n, std::move(e));
  }

  void parse_assign() {
    bump();  // 'g'
    expect_punct("[");
    int i = take_index();
    expect_punct(",");
    int j = take_index();
    expect_punct("]");
    expect_punct("=");
    Expr e = parse_expr();
    expect_punct(";");
    int mu = std::min(i, j), nu = std::max(i, j);
    if (spec_.comp[mu][nu])
      fail(cur_, "duplicate component g[" + std::to_string(i) + "," + std::to_string(j) + "]");
    spec_.comp[mu][nu] = std::move(e);
  }

  int take_index() {
    if (cur_.type != Token::Type::number || !cur_.is_integer)
      fail(cur_, "expected an integer index");
    int v = static_cast<int>(cur_.num);
    if (v < 0 || v > 3) fail(cur_, "component index outside 0..3");
    bump();
    return v;
  }

  Expr parse_expr() { return parse_sum(); }

  Expr parse_sum() {
    Expr e = parse_product();
    while (at_punct("+") || at_punct("-")) {
      bool add = cur_.text == "+";
      bump();
      Expr rhs = parse_product();
      Expr n;
      n.kind = add ? Expr::Kind::add : Expr::Kind::sub;
      n.args.push_back(std::move(e));
      n.args.push_back(std::move(rhs));
      e = std::move(n);
    }
    return e;
  }

  Expr parse_product() {
    Expr e = parse_unary();
    while (at_punct("*") || at_punct("/")) {
      bool mul = cur_.text == "*";
      bump();
      Expr rhs = parse_unary();
      Expr n;
      n.kind = mul ? Expr::Kind::mul : Expr::Kind::div;
      n.args.push_back(std::move(e));
      n.args.push_back(std::move(rhs));
      e = std::move(n);
    }
    return e;
  }

  Expr parse_unary() {
    if (at_punct("-")) {
      bump();
      Expr n;
      n.kind = Expr::Kind::neg;
      n.args.push_back(parse_unary());
      return n;
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (!at_punct("^")) return base;
    Token caret = cur_;
    bump();
    bool negate = false;
    if (at_punct("-")) {
      negate = true;
      bump();
    }
    if (cur_.type != Token::Type::number)
      fail(caret, "exponent must be a numeric literal");
    Expr n;
    n.args.push_back(std::move(base));
    if (cur_.is_integer) {
      n.kind = Expr::Kind::pow_int;
      n.iexp = static_cast<int>(cur_.num) * (negate ? -1 : 1);
    } else {
      n.kind = Expr::Kind::pow_real;
      n.number = cur_.num * (negate ? -1.0 : 1.0);
    }
    bump();
    return n;
  }

  Expr parse_atom() {
    if (cur_.type == Token::Type::number) {
      Expr e = Expr::num(cur_.num);
      bump();
      return e;
    }
    if (at_punct("(")) {
      bump();
      Expr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (cur_.type == Token::Type::ident) {
      Token at = cur_;
      std::string n = take_name();
      if (at_punct("(")) {
        if (!kBuiltinFunctions.count(n)) fail(at, "unknown function '" + n + "'");
        bump();
        Expr e;
        e.kind = Expr::Kind::call;
        e.name = n;
        e.args.push_back(parse_expr());
        expect_punct(")");
        return e;
      }
      if (!known_.count(n)) fail(at, "unknown identifier '" + n + "'");
      return Expr::ident(n);
    }
    fail(cur_, "expected a number, identifier, call or parenthesized expression");
  }

  Lexer lex_;
  Token cur_;
  MetricSpec spec_;
  std::set<std::string> known_;
};

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int expr_prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    case Expr::Kind::neg:
      return 3;
    case Expr::Kind::pow_int:
    case Expr::Kind::pow_real:
      return 4;
    default:
      return 5;
  }
}

void print_rec(std::ostringstream& oss, const Expr& e, int parent_prec) {
  int p = expr_prec(e);
  bool paren = p < parent_prec;
  if (paren) oss << "(";
  switch (e.kind) {
    case Expr::Kind::number:
      oss << fmt_double(e.number);
      break;
    case Expr::Kind::ident:
      oss << e.name;
      break;
    case Expr::Kind::neg:
      oss << "-";
      print_rec(oss, e.args[0], p);
      break;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div: {
      const char* op = e.kind == Expr::Kind::add   ? " + "
                       : e.kind == Expr::Kind::sub ? " - "
                       : e.kind == Expr::Kind::mul ? " * "
                                                   : " / ";
      print_rec(oss, e.args[0], p);
      oss << op;
      print_rec(oss, e.args[1], p + 1);
      break;
    }
    case Expr::Kind::pow_int:
      print_rec(oss, e.args[0], 5);
      oss << "^" << e.iexp;
      break;
    case Expr::Kind::pow_real:
      print_rec(oss, e.args[0], 5);
      oss << "^" << fmt_double(e.number);
      break;
    case Expr::Kind::call:
      oss << e.name << "(";
      print_rec(oss, e.args[0], 0);
      oss << ")";
      break;
  }
  if (paren) oss << ")";
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream oss;
  print_rec(oss, e, 0);
  return oss.str();
}

std::string print_metric(const MetricSpec& spec) {
  std::ostringstream oss;
  oss << "metric \"" << spec.name << "\" {\n";
  oss << "  coords: " << spec.coords[0] << ", " << spec.coords[1] << ", " << spec.coords[2]
      << ", " << spec.coords[3] << ";\n";
  if (!spec.params.empty()) {
    oss << "  params: ";
    for (size_t i = 0; i < spec.params.size(); ++i) {
      if (i) oss << ", ";
      oss << spec.params[i].first << " = " << fmt_double(spec.params[i].second);
    }
    oss << ";\n";
  }
  for (auto& l : spec.lets) oss << "  let " << l.first << " = " << print_expr(l.second) << ";\n";
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu)
      if (spec.comp[mu][nu])
        oss << "  g[" << mu << "," << nu << "] = " << print_expr(*spec.comp[mu][nu]) << ";\n";
  oss << "}\n";
  return oss.str();
}

MetricSpec parse_metric(std::string_view text, std::string_view filename) {
  return Parser(text, filename).parse();
}

MetricSpec parse_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ":1:1: cannot open file");
  std::ostringstream oss;
  oss << in.rdbuf();
  return parse_metric(oss.str(), path);
}

std::vector<std::pair<std::string, double>> resolve_params(
    const MetricSpec& spec, const std::map<std::string, double>& overrides) {
  for (auto& kv : overrides)
    if (!spec.has_param(kv.first))
      throw PreconditionError("metric '" + spec.name + "' has no parameter '" + kv.first + "'");
  std::vector<std::pair<std::string, double>> out = spec.params;
  for (auto& p : out) {
    auto it = overrides.find(p.first);
    if (it != overrides.end()) p.second = it->second;
  }
  return out;
}

}  // namespace gralg
