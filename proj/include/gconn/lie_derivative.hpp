#pragma once

#include <functional>

#include "gconn/distribution.hpp"

namespace gconn {

/// Throws NotIntegrable when [D,D] has a Dperp component at a probe point.
void require_integrable(const DistributionSplit& split, const std::vector<Point>& pts,
                        double tol = 1e-10);

/// Lie derivatives of the partial connections along D-operators and of the
/// normal connection, with the commutator and curvature identities they
/// satisfy. `use_semisym` selects the partial semi-symmetric connection in
/// place of the partial Levi-Civita one where both are defined.
class LieDerivatives {
public:
  LieDerivatives(const SplitGeometry& geo, bool use_semisym)
      : geo_(&geo), ss_(use_semisym) {}

  /// L_X(nabla^D)(Y,Z) along X in D; value lies in D.
  Derivation lie_conn(const Derivation& x, const Derivation& y, const Derivation& z) const;

  /// [L_X,L_Y](nabla^D)(Z,W) minus its displayed bracket expansion.
  Derivation commutator_residual(const Derivation& x, const Derivation& y, const Derivation& z,
                                 const Derivation& w) const;

  /// [L_X,L_Y](nabla^D)(Z,W) - L_{[X,Y]}(nabla^D)(Z,W); requires integrability.
  Derivation integrable_commutator_residual(const Derivation& x, const Derivation& y,
                                            const Derivation& z, const Derivation& w,
                                            const std::vector<Point>& pts) const;

  /// (L_X R^{D,L})(Y,Z,W) minus the five-term display; requires integrability.
  Derivation curvature_residual(const Derivation& x, const Derivation& y, const Derivation& z,
                                const Derivation& w, const std::vector<Point>& pts) const;

  /// Lperp_X(nabla-perp)(Y,N); value lies in Dperp.
  Derivation lie_normal(const Derivation& x, const Derivation& y, const Derivation& n) const;

  /// Module rules of the normal Lie derivative against a scale form.
  Derivation normal_first_slot_residual(const Derivation& x, const Derivation& y,
                                        const Derivation& n, const Form& alpha) const;
  Derivation normal_second_slot_residual(const Derivation& x, const Derivation& y,
                                         const Derivation& n, const Form& alpha) const;

  Derivation normal_commutator_residual(const Derivation& x, const Derivation& y,
                                        const Derivation& z, const Derivation& n) const;

  Derivation normal_integrable_commutator_residual(const Derivation& x, const Derivation& y,
                                                   const Derivation& z, const Derivation& n,
                                                   const std::vector<Point>& pts) const;

  Derivation normal_curvature_residual(const Derivation& x, const Derivation& y,
                                       const Derivation& z, const Derivation& n,
                                       const std::vector<Point>& pts) const;

private:
  using Bilinear = std::function<Derivation(const Derivation&, const Derivation&)>;

  Derivation conn(const Derivation& x, const Derivation& y) const;  // the partial connection
  Derivation nperp(const Derivation& x, const Derivation& n) const;
  Derivation bd(const Derivation& x, const Derivation& y) const;    // [.,.]^D
  Derivation bperp(const Derivation& x, const Derivation& n) const; // [.,.]^{Dperp}

  /// Graded tensor Lie derivative of a bilinear map of parity `pb` whose
  /// value and second slot live on `d_side`.
  Derivation lie_of(const Bilinear& b, int pb, bool d_side, const Derivation& x,
                    const Derivation& y, const Derivation& z) const;

  /// Iterated-commutator left side [L_X, L_Y](b)(Z,W).
  Derivation commutator_lhs(const Bilinear& b, bool d_side, const Derivation& x,
                            const Derivation& y, const Derivation& z, const Derivation& w) const;

  Derivation partial_curv(const Derivation& y, const Derivation& z, const Derivation& w) const;
  Derivation normal_curv(const Derivation& y, const Derivation& z, const Derivation& n) const;

  const SplitGeometry* geo_;
  bool ss_;
};

}  // namespace gconn
