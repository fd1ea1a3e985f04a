#pragma once

#include <set>

#include "gconn/connection.hpp"

namespace gconn {

/// Frame-index split Der = D (+) Dperp. D is the Omega-span of the frame
/// generators {L_{E_k}, i_{E_k} : k in S}; the complement indices span Dperp.
/// The frame defaults to the coordinate frame.
class DistributionSplit {
public:
  DistributionSplit(std::vector<VectorField> frame_rows, std::set<int> d_indices);
  static DistributionSplit coordinate(int dim, std::set<int> d_indices);

  int dim() const { return basis_.dim(); }
  const std::set<int>& d_set() const { return d_; }
  bool in_d(int k) const { return d_.count(k) > 0; }
  const VectorField& frame_row(int k) const { return basis_.row(k); }
  const FrameBasis& basis() const { return basis_; }

  /// Frame generator lifts L_{E_k} / i_{E_k}.
  Derivation gen(Gen g, int k) const;
  /// All generators spanning one side, L's first.
  std::vector<Derivation> side_generators(bool d_side) const;

  /// Even Omega-linear projection onto D (d_side) or Dperp.
  Derivation project(const Derivation& w, bool d_side) const;

  /// Coefficients of w over the frame generators: first the L-row, then the
  /// i-row, each dim() forms.
  std::pair<std::vector<Form>, std::vector<Form>> expand(const Derivation& w) const;

  /// Throws NotInDistribution when w has a component on the other side at any
  /// of the probe points.
  void require_in(const Derivation& w, bool d_side, const std::vector<Point>& pts,
                  double tol = 1e-9) const;

  /// max over D-generator pairs and probe points of |pi_perp [G_a, G_b]|.
  double integrability_residual(const std::vector<Point>& pts) const;

private:
  FrameBasis basis_;
  std::set<int> d_;
};

/// Second-fundamental-form, shape-operator and partial-connection data of a
/// split with respect to nabla^L and the semi-symmetric nabla (P may be zero,
/// which degenerates everything to the Levi-Civita case of the corollaries).
class SplitGeometry {
public:
  SplitGeometry(DistributionSplit split, std::shared_ptr<const LeviCivitaLift> lc,
                GradedMetric gm, Derivation p);

  const DistributionSplit& split() const { return split_; }
  const GradedMetric& graded_metric() const { return gm_; }
  const SemiSymmetric& semisym() const { return ss_; }
  const Derivation& p() const { return p_; }

  Derivation u_d() const { return split_.project(p_, true); }
  Derivation u_perp() const { return split_.project(p_, false); }

  // partial connections
  Derivation dlc(const Derivation& x, const Derivation& y) const;   // pi_D nabla^L
  Derivation dss(const Derivation& x, const Derivation& y) const;   // pi_D nabla
  Derivation b(const Derivation& x, const Derivation& y) const;     // pi_perp nabla^L
  Derivation bt(const Derivation& x, const Derivation& y) const;    // pi_perp nabla
  Derivation nperp(const Derivation& x, const Derivation& xi) const;  // pi_perp nabla^L
  Derivation shape(const Derivation& x, const Derivation& xi) const;  // A_X xi
  Derivation shape_t(const Derivation& x, const Derivation& xi) const;  // A~_X xi

  Derivation bracket_d(const Derivation& x, const Derivation& y) const;
  Derivation bracket_perp(const Derivation& x, const Derivation& y) const;

  /// Curvature of the partial semi-symmetric connection, tensorial via the
  /// projected-bracket correction term.
  Derivation curv_d(const Derivation& x, const Derivation& y, const Derivation& z) const;
  /// Normal curvature of nabla-perp with its projected correction term.
  Derivation curv_perp(const Derivation& x, const Derivation& y, const Derivation& xi) const;

  // fundamental equations: residual = direct curvature minus the displayed
  // right side; all arguments homogeneous and on the documented sides
  Form gauss_residual(const Derivation& x, const Derivation& y, const Derivation& z,
                      const Derivation& w) const;
  Derivation codazzi_residual(const Derivation& x, const Derivation& y,
                              const Derivation& z) const;
  Derivation ricci_eq_residual(const Derivation& x, const Derivation& y,
                               const Derivation& xi) const;

  // displayed identities used as suite rows
  Derivation partial_torsion_residual(const Derivation& x, const Derivation& y) const;  // (3.2)
  Form partial_metricity_residual(const Derivation& x, const Derivation& y,
                                  const Derivation& z) const;                           // (3.2)
  Derivation b_symmetry_residual(const Derivation& x, const Derivation& y) const;       // (3.5)
  Form partial_koszul_residual(const Derivation& x, const Derivation& y,
                               const Derivation& z) const;                              // (3.6)
  Derivation dss_display_residual(const Derivation& x, const Derivation& y) const;      // (3.8)
  Derivation bt_display_residual(const Derivation& x, const Derivation& y) const;       // (3.8)
  Form dss_metricity_residual(const Derivation& x, const Derivation& y,
                              const Derivation& z) const;                               // (3.9)
  Derivation dss_torsion_residual(const Derivation& x, const Derivation& y) const;      // (3.9)
  Derivation normal_rule_residual(const Derivation& x, const Derivation& xi) const;     // (3.10)
  Form adjoint_residual(const Derivation& x, const Derivation& y,
                        const Derivation& xi) const;                                    // (3.13)
  Derivation weingarten_residual(const Derivation& x, const Derivation& xi) const;      // (3.14)
  Derivation exchange_residual(const Derivation& x, const Derivation& y) const;         // (3.19)

private:
  DistributionSplit split_;
  std::shared_ptr<const LeviCivitaLift> lc_;
  GradedMetric gm_;
  Derivation p_;
  SemiSymmetric ss_;
};

}  // namespace gconn
