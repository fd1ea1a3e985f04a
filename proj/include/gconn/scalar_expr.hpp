#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gconn/errors.hpp"

namespace gconn {

/// Chart point: one real per coordinate.
using Point = std::vector<double>;

/// Exact rational number, reduced, positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
  Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Memo table reused while evaluating many expressions sharing subtrees at one
/// point. Subtrees are DAG-shared, so caching by node identity keeps the walk
/// linear in the number of distinct nodes.
class EvalContext {
public:
  explicit EvalContext(Point p) : point_(std::move(p)) {}
  const Point& point() const { return point_; }

private:
  friend class ScalarExpr;
  friend struct ExprImpl;
  Point point_;
  std::unordered_map<const void*, double> memo_;
  // Roots evaluated through this context; keeps memo keys from being freed
  // and their addresses reused by later temporaries.
  std::vector<std::shared_ptr<const void>> retained_;
};

/// Immutable symbolic expression in the chart coordinates. Values of this type
/// are cheap shared handles; all operations build new trees.
class ScalarExpr {
public:
  enum class Kind : std::uint8_t { Constant, Coord, Pi, Add, Sub, Mul, Div, Pow, Fun };
  enum class Func : std::uint8_t { Sin, Cos, Tan, Exp, Log };

  struct Node;  // opaque; defined in the implementation

  /// Zero.
  ScalarExpr();

  static ScalarExpr constant(double v);
  static ScalarExpr coord(int index);  // 1-based
  static ScalarExpr pi();

  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
  ScalarExpr operator-() const { return constant(-1.0) * *this; }

  static ScalarExpr pow(const ScalarExpr& base, Rational exponent);
  static ScalarExpr apply(Func f, const ScalarExpr& arg);

  /// Exact partial derivative with respect to coordinate `index` (1-based).
  ScalarExpr diff(int index) const;

  double eval(const Point& p) const;
  double eval(EvalContext& ctx) const;

  /// Grammar-conformant rendering; parse(str()) reproduces the tree.
  std::string str(const std::vector<std::string>& coords) const;

  bool is_zero() const;
  bool is_one() const;
  std::optional<double> constant_value() const;

  /// Number of distinct nodes in the underlying DAG.
  std::size_t node_count() const;

  Kind kind() const;

private:
  explicit ScalarExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend struct ExprImpl;
};

inline ScalarExpr sin(const ScalarExpr& e) { return ScalarExpr::apply(ScalarExpr::Func::Sin, e); }
inline ScalarExpr cos(const ScalarExpr& e) { return ScalarExpr::apply(ScalarExpr::Func::Cos, e); }
inline ScalarExpr tan(const ScalarExpr& e) { return ScalarExpr::apply(ScalarExpr::Func::Tan, e); }
inline ScalarExpr exp(const ScalarExpr& e) { return ScalarExpr::apply(ScalarExpr::Func::Exp, e); }
inline ScalarExpr log(const ScalarExpr& e) { return ScalarExpr::apply(ScalarExpr::Func::Log, e); }
inline ScalarExpr sqrt(const ScalarExpr& e) { return ScalarExpr::pow(e, Rational(1, 2)); }

/// Parses the expression grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' exponent)?
///   base   := number | name | '(' expr ')' | func '(' expr ')'
///   func   := sin|cos|tan|exp|log|sqrt
/// Names must be coordinates or 'pi'.
ScalarExpr parse_expr(const std::string& text, const std::vector<std::string>& coords);

/// Distribute-and-collect zero test: expands to a signed monomial list over
/// structurally atomic factors and checks that everything cancels. Used by
/// tests and structural assertions; numeric checks never depend on it.
bool expr_is_zero_expanded(const ScalarExpr& e);

}  // namespace gconn
