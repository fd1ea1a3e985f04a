#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gconn/scalar_expr.hpp"

namespace gconn {

/// Smooth vector field, components in the coordinate basis.
class VectorField {
public:
  explicit VectorField(int dim) : comps_(static_cast<std::size_t>(dim), ScalarExpr()) {}
  explicit VectorField(std::vector<ScalarExpr> comps) : comps_(std::move(comps)) {}

  static VectorField coordinate(int dim, int j);  // the j-th coordinate field
  static VectorField zero(int dim) { return VectorField(dim); }

  int dim() const { return static_cast<int>(comps_.size()); }
  const ScalarExpr& comp(int j) const { return comps_[static_cast<std::size_t>(j - 1)]; }
  ScalarExpr& comp(int j) { return comps_[static_cast<std::size_t>(j - 1)]; }

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField scaled(const ScalarExpr& f) const;

  /// Symbolic Lie bracket of vector fields.
  friend VectorField bracket(const VectorField& v, const VectorField& w);

  bool is_structurally_zero() const;
  std::string str(const std::vector<std::string>& coords) const;

private:
  std::vector<ScalarExpr> comps_;
};

/// Differential form on one chart. Terms map a strictly increasing multi-index
/// (stored as a bitmask over coordinates, bit j-1 for dx_j) to a coefficient.
/// May be inhomogeneous; signed rules decompose by parity first.
class Form {
public:
  explicit Form(int dim) : dim_(dim) {}

  static Form scalar(int dim, ScalarExpr f);
  static Form scalar(int dim, double v) { return scalar(dim, ScalarExpr::constant(v)); }
  static Form dx(int dim, int j);
  /// The coordinate function x_j as a degree-0 form.
  static Form coordinate(int dim, int j);
  static Form term(int dim, std::uint32_t mask, ScalarExpr coeff);

  int dim() const { return dim_; }
  const std::map<std::uint32_t, ScalarExpr>& terms() const { return terms_; }
  bool is_structurally_zero() const { return terms_.empty(); }

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  friend Form wedge(const Form& a, const Form& b);
  Form mul_scalar(const ScalarExpr& f) const;

  /// Exterior derivative.
  Form d() const;
  /// Interior product i_v.
  Form interior(const VectorField& v) const;
  /// Lie derivative along v (Cartan: d i_v + i_v d).
  Form lie(const VectorField& v) const;
  /// Coefficient-wise partial derivative; the Lie derivative along the j-th
  /// coordinate field.
  Form dcoord(int j) const;

  bool is_homogeneous_parity() const;
  /// Parity (degree mod 2); throws NonHomogeneous when terms mix parity.
  int parity() const;
  Form even_part() const;
  Form odd_part() const;
  /// Split by degree, lowest first; sums back to the original form.
  std::vector<Form> homogeneous_components() const;

  double eval_coeff(std::uint32_t mask, EvalContext& ctx) const;
  double max_abs(EvalContext& ctx) const;
  double max_abs(const Point& p) const;

  std::string str(const std::vector<std::string>& coords) const;

  /// Permutation sign merging two disjoint increasing multi-indices; 0 when
  /// they overlap.
  static int wedge_sign(std::uint32_t lhs, std::uint32_t rhs);

private:
  void add_term(std::uint32_t mask, const ScalarExpr& coeff);

  int dim_ = 0;
  std::map<std::uint32_t, ScalarExpr> terms_;
};

/// Parses the form literal grammar: sum of terms "expr * dx<i>^dx<j>^...";
/// a bare "expr" is a degree-0 term.
Form parse_form(const std::string& text, const std::vector<std::string>& coords);

/// Parses a vector field given as a list of component expressions.
VectorField parse_vector(const std::vector<std::string>& comps,
                         const std::vector<std::string>& coords);

}  // namespace gconn
