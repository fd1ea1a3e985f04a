#include "gconn/scalar_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace gconn {

namespace {
long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}
}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = gcd_ll(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
}

struct ScalarExpr::Node {
  Kind kind = Kind::Constant;
  Func fun = Func::Sin;
  double value = 0.0;
  int index = 0;
  Rational exponent;
  std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const ScalarExpr::Node>;

struct ExprImpl {
  static ScalarExpr make(NodePtr n) { return ScalarExpr(std::move(n)); }
  static const NodePtr& node(const ScalarExpr& e) { return e.node_; }
  static std::unordered_map<const void*, double>& memo(EvalContext& ctx) { return ctx.memo_; }
};

ScalarExpr::ScalarExpr() { *this = constant(0.0); }

namespace {

NodePtr make_constant_node(double v) {
  auto n = std::make_shared<ScalarExpr::Node>();
  n->kind = ScalarExpr::Kind::Constant;
  n->value = v;
  return n;
}

}  // namespace

// Leaves are interned so independently built copies share nodes; pointer
// identity then catches the common x - x cancellations.
ScalarExpr ScalarExpr::constant(double v) {
  static const NodePtr zero = make_constant_node(0.0);
  static const NodePtr one = make_constant_node(1.0);
  static const NodePtr minus_one = make_constant_node(-1.0);
  static const NodePtr two = make_constant_node(2.0);
  static const NodePtr half = make_constant_node(0.5);
  if (v == 0.0) return ScalarExpr(zero);
  if (v == 1.0) return ScalarExpr(one);
  if (v == -1.0) return ScalarExpr(minus_one);
  if (v == 2.0) return ScalarExpr(two);
  if (v == 0.5) return ScalarExpr(half);
  return ScalarExpr(make_constant_node(v));
}

ScalarExpr ScalarExpr::coord(int index) {
  if (index < 1) throw Error("coordinate index must be >= 1");
  static std::mutex mu;
  static std::vector<NodePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (index > static_cast<int>(cache.size())) cache.resize(static_cast<std::size_t>(index));
  NodePtr& slot = cache[static_cast<std::size_t>(index - 1)];
  if (!slot) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Coord;
    n->index = index;
    slot = std::move(n);
  }
  return ScalarExpr(slot);
}

ScalarExpr ScalarExpr::pi() {
  static const NodePtr node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pi;
    return NodePtr(std::move(n));
  }();
  return ScalarExpr(node);
}

ScalarExpr::Kind ScalarExpr::kind() const { return node_->kind; }

bool ScalarExpr::is_zero() const { return node_->kind == Kind::Constant && node_->value == 0.0; }
bool ScalarExpr::is_one() const { return node_->kind == Kind::Constant && node_->value == 1.0; }

std::optional<double> ScalarExpr::constant_value() const {
  if (node_->kind == Kind::Constant) return node_->value;
  return std::nullopt;
}

namespace {

ScalarExpr binary(ScalarExpr::Kind k, const ScalarExpr& a, const ScalarExpr& b) {
  auto n = std::make_shared<ScalarExpr::Node>();
  n->kind = k;
  n->a = ExprImpl::node(a);
  n->b = ExprImpl::node(b);
  return ExprImpl::make(std::move(n));
}

}  // namespace

namespace {

// Matches (-1) * <node> and returns the node; shared-subtree cancellations
// like c + (-1)*c collapse by pointer identity.
const NodePtr* negated_operand(const NodePtr& n) {
  if (n->kind == ScalarExpr::Kind::Mul && n->a->kind == ScalarExpr::Kind::Constant &&
      n->a->value == -1.0)
    return &n->b;
  return nullptr;
}

}  // namespace

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto ca = a.constant_value();
  auto cb = b.constant_value();
  if (ca && cb) return ScalarExpr::constant(*ca + *cb);
  if (const NodePtr* nb = negated_operand(ExprImpl::node(b));
      nb && nb->get() == ExprImpl::node(a).get())
    return ScalarExpr::constant(0.0);
  if (const NodePtr* na = negated_operand(ExprImpl::node(a));
      na && na->get() == ExprImpl::node(b).get())
    return ScalarExpr::constant(0.0);
  return binary(ScalarExpr::Kind::Add, a, b);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  if (b.is_zero()) return a;
  auto ca = a.constant_value();
  auto cb = b.constant_value();
  if (ca && cb) return ScalarExpr::constant(*ca - *cb);
  if (a.is_zero()) return ScalarExpr::constant(-1.0) * b;
  if (ExprImpl::node(a).get() == ExprImpl::node(b).get()) return ScalarExpr::constant(0.0);
  return binary(ScalarExpr::Kind::Sub, a, b);
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_zero() || b.is_zero()) return ScalarExpr::constant(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  auto ca = a.constant_value();
  auto cb = b.constant_value();
  if (ca && cb) return ScalarExpr::constant(*ca * *cb);
  return binary(ScalarExpr::Kind::Mul, a, b);
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_zero()) return a;
  if (b.is_one()) return a;
  auto ca = a.constant_value();
  auto cb = b.constant_value();
  if (ca && cb && *cb != 0.0) return ScalarExpr::constant(*ca / *cb);
  return binary(ScalarExpr::Kind::Div, a, b);
}

ScalarExpr ScalarExpr::pow(const ScalarExpr& base, Rational exponent) {
  if (exponent.num == 0) return constant(1.0);
  if (exponent == Rational(1, 1)) return base;
  auto cb = base.constant_value();
  if (cb) {
    if (exponent.is_integer()) return constant(std::pow(*cb, static_cast<double>(exponent.num)));
    if (*cb > 0.0) return constant(std::pow(*cb, exponent.value()));
  }
  if (base.node_->kind == Kind::Pow) {
    Rational merged = base.node_->exponent * exponent;
    return pow(ScalarExpr(base.node_->a), merged);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->a = base.node_;
  n->exponent = exponent;
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::apply(Func f, const ScalarExpr& arg) {
  auto ca = arg.constant_value();
  if (ca) {
    double v = 0.0;
    switch (f) {
      case Func::Sin: v = std::sin(*ca); break;
      case Func::Cos: v = std::cos(*ca); break;
      case Func::Tan: v = std::tan(*ca); break;
      case Func::Exp: v = std::exp(*ca); break;
      case Func::Log: v = *ca > 0.0 ? std::log(*ca) : std::nan(""); break;
    }
    if (std::isfinite(v)) return constant(v);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Fun;
  n->fun = f;
  n->a = arg.node_;
  return ScalarExpr(std::move(n));
}

// --- differentiation -------------------------------------------------------

namespace {

struct DiffCtx {
  int index;
  std::unordered_map<const ScalarExpr::Node*, ScalarExpr> memo;
};

ScalarExpr diff_ptr(const NodePtr& n, DiffCtx& ctx) {
  auto it = ctx.memo.find(n.get());
  if (it != ctx.memo.end()) return it->second;

  using K = ScalarExpr::Kind;
  using F = ScalarExpr::Func;
  auto sub = [&](const NodePtr& p) { return diff_ptr(p, ctx); };
  auto val = [](const NodePtr& p) { return ExprImpl::make(p); };

  ScalarExpr d;
  switch (n->kind) {
    case K::Constant:
    case K::Pi: d = ScalarExpr::constant(0.0); break;
    case K::Coord: d = ScalarExpr::constant(n->index == ctx.index ? 1.0 : 0.0); break;
    case K::Add: d = sub(n->a) + sub(n->b); break;
    case K::Sub: d = sub(n->a) - sub(n->b); break;
    case K::Mul: d = sub(n->a) * val(n->b) + val(n->a) * sub(n->b); break;
    case K::Div:
      d = (sub(n->a) * val(n->b) - val(n->a) * sub(n->b)) /
          ScalarExpr::pow(val(n->b), Rational(2, 1));
      break;
    case K::Pow: {
      Rational r = n->exponent;
      d = ScalarExpr::constant(r.value()) *
          ScalarExpr::pow(val(n->a), r - Rational(1, 1)) * sub(n->a);
      break;
    }
    case K::Fun: {
      ScalarExpr u = val(n->a);
      ScalarExpr du = sub(n->a);
      switch (n->fun) {
        case F::Sin: d = cos(u) * du; break;
        case F::Cos: d = ScalarExpr::constant(-1.0) * sin(u) * du; break;
        case F::Tan: d = du / ScalarExpr::pow(cos(u), Rational(2, 1)); break;
        case F::Exp: d = exp(u) * du; break;
        case F::Log: d = du / u; break;
      }
      break;
    }
  }
  ctx.memo.emplace(n.get(), d);
  return d;
}

}  // namespace

ScalarExpr ScalarExpr::diff(int index) const {
  if (index < 1) throw Error("diff: coordinate index must be >= 1");
  DiffCtx ctx{index, {}};
  return diff_ptr(node_, ctx);
}

// --- evaluation -------------------------------------------------------------

namespace {

double eval_ptr(const ScalarExpr::Node* n, EvalContext& ctx) {
  auto& memo = ExprImpl::memo(ctx);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;

  using K = ScalarExpr::Kind;
  using F = ScalarExpr::Func;
  auto sub = [&](const NodePtr& p) { return eval_ptr(p.get(), ctx); };

  double v = 0.0;
  switch (n->kind) {
    case K::Constant: v = n->value; break;
    case K::Pi: v = M_PI; break;
    case K::Coord: {
      const Point& p = ctx.point();
      if (n->index < 1 || static_cast<std::size_t>(n->index) > p.size())
        throw DimensionMismatch("point has no coordinate " + std::to_string(n->index));
      v = p[n->index - 1];
      break;
    }
    case K::Add: v = sub(n->a) + sub(n->b); break;
    case K::Sub: v = sub(n->a) - sub(n->b); break;
    case K::Mul: v = sub(n->a) * sub(n->b); break;
    case K::Div: {
      double den = sub(n->b);
      if (den == 0.0) throw EvalSingularity("division by zero");
      v = sub(n->a) / den;
      break;
    }
    case K::Pow: {
      double base = sub(n->a);
      const Rational& r = n->exponent;
      if (r.is_integer()) {
        v = std::pow(base, static_cast<double>(r.num));
      } else {
        if (base < 0.0) throw EvalSingularity("fractional power of a negative base");
        if (base == 0.0 && r.num < 0) throw EvalSingularity("zero to a negative power");
        v = std::pow(base, r.value());
      }
      break;
    }
    case K::Fun: {
      double u = sub(n->a);
      switch (n->fun) {
        case F::Sin: v = std::sin(u); break;
        case F::Cos: v = std::cos(u); break;
        case F::Tan: v = std::tan(u); break;
        case F::Exp: v = std::exp(u); break;
        case F::Log:
          if (u <= 0.0) throw EvalSingularity("log of a nonpositive value");
          v = std::log(u);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(v)) throw EvalSingularity("non-finite value during evaluation");
  memo.emplace(n, v);
  return v;
}

}  // namespace

double ScalarExpr::eval(EvalContext& ctx) const {
  ctx.retained_.push_back(node_);
  return eval_ptr(node_.get(), ctx);
}

double ScalarExpr::eval(const Point& p) const {
  EvalContext ctx(p);
  return eval(ctx);
}

std::size_t ScalarExpr::node_count() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!n || !seen.insert(n).second) continue;
    if (n->a) stack.push_back(n->a.get());
    if (n->b) stack.push_back(n->b.get());
  }
  return seen.size();
}

// --- printing ----------------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  if (std::strtod(buf, nullptr) == v) return buf;
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* func_name(ScalarExpr::Func f) {
  switch (f) {
    case ScalarExpr::Func::Sin: return "sin";
    case ScalarExpr::Func::Cos: return "cos";
    case ScalarExpr::Func::Tan: return "tan";
    case ScalarExpr::Func::Exp: return "exp";
    case ScalarExpr::Func::Log: return "log";
  }
  return "?";
}

// Precedence: 0 sum, 1 product, 2 power operand, 3 atom.
void print_node(const NodePtr& n, const std::vector<std::string>& coords, int parent_prec,
                std::string& out) {
  using K = ScalarExpr::Kind;
  auto grouped = [&](int prec, auto&& body) {
    bool need = prec < parent_prec;
    if (need) out += '(';
    body();
    if (need) out += ')';
  };
  switch (n->kind) {
    case K::Constant:
      if (n->value < 0.0) {
        grouped(0, [&] {
          out += "0 - ";
          out += format_double(-n->value);
        });
      } else {
        out += format_double(n->value);
      }
      return;
    case K::Pi: out += "pi"; return;
    case K::Coord: {
      std::size_t i = static_cast<std::size_t>(n->index);
      if (i >= 1 && i <= coords.size()) out += coords[i - 1];
      else out += "x" + std::to_string(n->index);
      return;
    }
    case K::Add:
      grouped(0, [&] {
        print_node(n->a, coords, 0, out);
        out += " + ";
        print_node(n->b, coords, 1, out);
      });
      return;
    case K::Sub:
      grouped(0, [&] {
        print_node(n->a, coords, 0, out);
        out += " - ";
        print_node(n->b, coords, 1, out);
      });
      return;
    case K::Mul:
      grouped(1, [&] {
        print_node(n->a, coords, 1, out);
        out += "*";
        print_node(n->b, coords, 2, out);
      });
      return;
    case K::Div:
      grouped(1, [&] {
        print_node(n->a, coords, 1, out);
        out += "/";
        print_node(n->b, coords, 2, out);
      });
      return;
    case K::Pow:
      grouped(2, [&] {
        print_node(n->a, coords, 3, out);
        out += "^";
        const Rational& r = n->exponent;
        if (r.is_integer()) {
          out += std::to_string(r.num);
        } else {
          out += "(" + std::to_string(r.num) + "/" + std::to_string(r.den) + ")";
        }
      });
      return;
    case K::Fun:
      out += func_name(n->fun);
      out += '(';
      print_node(n->a, coords, 0, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string ScalarExpr::str(const std::vector<std::string>& coords) const {
  std::string out;
  print_node(node_, coords, 0, out);
  return out;
}

// --- parser ---------------------------------------------------------------

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError("syntax error", pos, what);
  }
};

struct Parser {
  Lexer lex;
  const std::vector<std::string>& coords;

  ScalarExpr parse() {
    ScalarExpr e = expr();
    if (!lex.eof()) throw ParseError("trailing input", lex.pos, "end of input");
    return e;
  }

  ScalarExpr expr() {
    ScalarExpr e = term();
    for (;;) {
      if (lex.accept('+')) e = e + term();
      else if (lex.accept('-')) e = e - term();
      else return e;
    }
  }

  ScalarExpr term() {
    ScalarExpr e = factor();
    for (;;) {
      if (lex.accept('*')) e = e * factor();
      else if (lex.accept('/')) e = e / factor();
      else return e;
    }
  }

  ScalarExpr factor() {
    ScalarExpr b = base();
    if (lex.accept('^')) return ScalarExpr::pow(b, exponent());
    return b;
  }

  Rational exponent() {
    if (lex.accept('(')) {
      long long n = integer();
      lex.expect('/', "'/'");
      long long d = integer();
      lex.expect(')', "')'");
      return Rational(n, d);
    }
    return Rational(integer(), 1);
  }

  long long integer() {
    lex.skip_ws();
    std::size_t start = lex.pos;
    bool neg = false;
    if (lex.pos < lex.text.size() && lex.text[lex.pos] == '-') {
      neg = true;
      ++lex.pos;
    }
    std::size_t digits = 0;
    long long v = 0;
    while (lex.pos < lex.text.size() &&
           std::isdigit(static_cast<unsigned char>(lex.text[lex.pos]))) {
      v = v * 10 + (lex.text[lex.pos] - '0');
      ++digits;
      ++lex.pos;
    }
    if (digits == 0) throw ParseError("expected integer", start, "integer");
    return neg ? -v : v;
  }

  ScalarExpr base() {
    lex.skip_ws();
    std::size_t start = lex.pos;
    if (lex.pos >= lex.text.size())
      throw ParseError("unexpected end of input", start, "number, name or '('");
    char c = lex.text[lex.pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++lex.pos;
      ScalarExpr e = expr();
      lex.expect(')', "')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name_or_call();
    throw ParseError("unexpected character", start, "number, name or '('");
  }

  ScalarExpr number() {
    std::size_t start = lex.pos;
    const char* begin = lex.text.c_str() + start;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", start, "number");
    lex.pos = start + static_cast<std::size_t>(end - begin);
    return ScalarExpr::constant(v);
  }

  ScalarExpr name_or_call() {
    std::string id;
    while (lex.pos < lex.text.size() &&
           (std::isalnum(static_cast<unsigned char>(lex.text[lex.pos])) ||
            lex.text[lex.pos] == '_')) {
      id += lex.text[lex.pos++];
    }
    static const std::map<std::string, ScalarExpr::Func> funcs = {
        {"sin", ScalarExpr::Func::Sin}, {"cos", ScalarExpr::Func::Cos},
        {"tan", ScalarExpr::Func::Tan}, {"exp", ScalarExpr::Func::Exp},
        {"log", ScalarExpr::Func::Log}};
    lex.skip_ws();
    bool call = lex.pos < lex.text.size() && lex.text[lex.pos] == '(';
    if (call) {
      auto it = funcs.find(id);
      if (it == funcs.end() && id != "sqrt") throw UnknownIdentifier(id);
      ++lex.pos;
      ScalarExpr arg = expr();
      lex.expect(')', "')'");
      if (id == "sqrt") return sqrt(arg);
      return ScalarExpr::apply(it->second, arg);
    }
    if (id == "pi") return ScalarExpr::pi();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == id) return ScalarExpr::coord(static_cast<int>(i) + 1);
    }
    throw UnknownIdentifier(id);
  }
};

}  // namespace

ScalarExpr parse_expr(const std::string& text, const std::vector<std::string>& coords) {
  Parser p{Lexer{text, 0}, coords};
  return p.parse();
}

// --- expand-and-collect zero test -------------------------------------------

namespace {

struct Monomial {
  double coeff = 1.0;
  std::map<std::string, Rational> factors;

  void mul_atom(const std::string& key, Rational e) {
    auto it = factors.find(key);
    if (it == factors.end()) {
      factors.emplace(key, e);
    } else {
      it->second = it->second + e;
      if (it->second.num == 0) factors.erase(it);
    }
  }
};

using MonoList = std::vector<Monomial>;

MonoList expand(const NodePtr& n);

MonoList cross(const MonoList& a, const MonoList& b) {
  MonoList out;
  out.reserve(a.size() * b.size());
  for (const auto& m : a) {
    for (const auto& q : b) {
      Monomial r = m;
      r.coeff *= q.coeff;
      for (const auto& [k, e] : q.factors) r.mul_atom(k, e);
      out.push_back(std::move(r));
    }
  }
  return out;
}

MonoList collect(const MonoList& in) {
  std::map<std::string, std::pair<double, Monomial>> sums;
  for (const auto& m : in) {
    std::ostringstream key;
    for (const auto& [k, e] : m.factors) key << k << "^" << e.num << "/" << e.den << "|";
    auto [it, fresh] = sums.emplace(key.str(), std::make_pair(0.0, m));
    it->second.first += m.coeff;
  }
  MonoList out;
  for (auto& [k, pm] : sums) {
    if (std::abs(pm.first) <= 1e-12) continue;
    Monomial m = pm.second;
    m.coeff = pm.first;
    out.push_back(std::move(m));
  }
  return out;
}

std::string canonical_key(const NodePtr& n) {
  MonoList monos = collect(expand(n));
  std::ostringstream os;
  for (const auto& m : monos) {
    os << format_double(m.coeff);
    for (const auto& [k, e] : m.factors) os << "|" << k << "^" << e.num << "/" << e.den;
    os << "+";
  }
  return os.str();
}

MonoList expand(const NodePtr& n) {
  using K = ScalarExpr::Kind;
  switch (n->kind) {
    case K::Constant: return {Monomial{n->value, {}}};
    case K::Pi: return {Monomial{1.0, {{"pi", Rational(1, 1)}}}};
    case K::Coord: return {Monomial{1.0, {{"x#" + std::to_string(n->index), Rational(1, 1)}}}};
    case K::Add: {
      MonoList r = expand(n->a);
      MonoList s = expand(n->b);
      r.insert(r.end(), s.begin(), s.end());
      return r;
    }
    case K::Sub: {
      MonoList r = expand(n->a);
      MonoList s = expand(n->b);
      for (auto& m : s) m.coeff = -m.coeff;
      r.insert(r.end(), s.begin(), s.end());
      return r;
    }
    case K::Mul: return cross(expand(n->a), expand(n->b));
    case K::Div: {
      MonoList den = collect(expand(n->b));
      MonoList inv;
      if (den.size() == 1 && den[0].coeff != 0.0) {
        Monomial r;
        r.coeff = 1.0 / den[0].coeff;
        for (const auto& [k, e] : den[0].factors) r.factors.emplace(k, Rational(-e.num, e.den));
        inv = {r};
      } else {
        inv = {Monomial{1.0, {{"inv(" + canonical_key(n->b) + ")", Rational(1, 1)}}}};
      }
      return cross(expand(n->a), inv);
    }
    case K::Pow: {
      const Rational& r = n->exponent;
      if (r.is_integer() && r.num > 0 && r.num <= 8) {
        MonoList acc = expand(n->a);
        MonoList out = acc;
        for (long long i = 1; i < r.num; ++i) out = collect(cross(out, acc));
        return out;
      }
      MonoList base = collect(expand(n->a));
      if (base.size() == 1 && base[0].coeff == 1.0 && base[0].factors.size() == 1) {
        const auto& [k, e] = *base[0].factors.begin();
        return {Monomial{1.0, {{k, e * r}}}};
      }
      return {Monomial{1.0, {{"pow(" + canonical_key(n->a) + ")", r}}}};
    }
    case K::Fun:
      return {Monomial{
          1.0,
          {{std::string(func_name(n->fun)) + "(" + canonical_key(n->a) + ")", Rational(1, 1)}}}};
  }
  return {};
}

}  // namespace

bool expr_is_zero_expanded(const ScalarExpr& e) {
  if (e.is_zero()) return true;
  return collect(expand(ExprImpl::node(e))).empty();
}

}  // namespace gconn
