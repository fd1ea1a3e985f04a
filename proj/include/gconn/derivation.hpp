#pragma once

#include <string>
#include <vector>

#include "gconn/form.hpp"

namespace gconn {

/// Frame generator kind: Lie derivative (even) or interior product (odd).
enum class Gen : std::uint8_t { L, I };

inline int gen_parity(Gen g) { return g == Gen::L ? 0 : 1; }

/// One homogeneous-carrier term of a derivation: coefficient form wedged onto
/// a coordinate generator L_j or i_j.
struct DerTerm {
  Form coeff;
  Gen gen;
  int index;  // 1-based coordinate index
};

/// Element of Der Omega(M), canonically expanded over the coordinate
/// generators {L_j, i_j}. Terms with equal (gen, index) are merged and zero
/// coefficients dropped, so representation is a normal form.
class Derivation {
public:
  explicit Derivation(int dim) : dim_(dim) {}

  static Derivation generator(int dim, Gen g, int index);
  /// Lift of a vector field to the Lie-derivative derivation:
  /// L_{sum a^j d_j} = sum a^j L_j + (d a^j) i_j.
  static Derivation lift_L(const VectorField& v);
  /// Tensorial lift to the interior product: i_{sum a^j d_j} = sum a^j i_j.
  static Derivation lift_i(const VectorField& v);

  int dim() const { return dim_; }
  const std::vector<DerTerm>& terms() const { return terms_; }
  bool is_structurally_zero() const { return terms_.empty(); }

  /// Action on a form via the graded Leibniz expansion of each term.
  Form apply(const Form& a) const;

  Derivation operator+(const Derivation& o) const;
  Derivation operator-(const Derivation& o) const;
  Derivation operator-() const;
  Derivation scaled(double c) const;

  bool is_homogeneous() const;
  /// Parity of a homogeneous derivation; throws NonHomogeneous otherwise.
  int parity() const;
  Derivation even_part() const;
  Derivation odd_part() const;

  double max_abs(EvalContext& ctx) const;
  double max_abs(const Point& p) const;

  std::string str(const std::vector<std::string>& coords) const;

  void add_term(Form coeff, Gen g, int index);

private:
  int dim_;
  std::vector<DerTerm> terms_;
};

/// Left module multiplication a.W (coefficients wedge from the left).
Derivation mul_left(const Form& a, const Derivation& w);

/// Right module multiplication W.a = (-1)^{|a||W|} a.W, applied per
/// homogeneous component of both factors.
Derivation mul_right(const Derivation& w, const Form& a);

/// Graded commutator [W1,W2] = W1 W2 - (-1)^{|W1||W2|} W2 W1, reconstructed
/// from its action on the coordinate functions and coordinate differentials.
Derivation commutator(const Derivation& w1, const Derivation& w2);

}  // namespace gconn
