#pragma once

#include "gconn/distribution.hpp"

namespace gconn {

/// Parallelized frame with its structure functions C^mu_{kl}, where
/// [E_k, E_l] = sum_mu C^mu_{kl} E_mu.
class ParallelFrame {
public:
  explicit ParallelFrame(std::vector<VectorField> rows);

  int dim() const { return basis_.dim(); }
  const FrameBasis& basis() const { return basis_; }
  const VectorField& row(int k) const { return basis_.row(k); }
  Derivation gen(Gen g, int k) const { return basis_.gen(g, k); }
  std::vector<Derivation> generators() const;

  const ScalarExpr& structure(int mu, int k, int l) const;
  VectorField bracket_field(int k, int l) const;

  /// True when every dC^mu_{kl} vanishes at all probe points.
  bool constant_structure_at(const std::vector<Point>& pts, double tol = 1e-10) const;
  /// Throws NonConstantStructure when the flag fails.
  void require_constant_structure(const std::vector<Point>& pts, double tol = 1e-10) const;

private:
  FrameBasis basis_;
  std::vector<ScalarExpr> structure_;
};

/// The unique connection annihilating every frame generator:
/// nabla_X Y = sum X(omega_k) L_{E_k} + sum X(omega'_k) i_{E_k}.
class CanonicalConnection : public Connection {
public:
  explicit CanonicalConnection(std::shared_ptr<const ParallelFrame> frame)
      : frame_(std::move(frame)) {}

  int dim() const override { return frame_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "canonical"; }

  const ParallelFrame& frame() const { return *frame_; }

private:
  std::shared_ptr<const ParallelFrame> frame_;
};

/// Dual of the canonical connection: nabla_X Y = (-1)^{|X||Y|} nabla^c_Y X + [X,Y].
class DualConnection : public Connection {
public:
  explicit DualConnection(std::shared_ptr<const CanonicalConnection> canonical)
      : canonical_(std::move(canonical)) {}

  int dim() const override { return canonical_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "dual"; }

private:
  std::shared_ptr<const CanonicalConnection> canonical_;
};

/// (1 - lambda) nabla^c + lambda nabla-dual for a real constant lambda.
class LambdaConnection : public Connection {
public:
  LambdaConnection(std::shared_ptr<const CanonicalConnection> canonical, double lambda)
      : canonical_(std::move(canonical)), dual_(canonical_), lambda_(lambda) {}

  int dim() const override { return canonical_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "lambda-blend"; }
  double lambda() const { return lambda_; }

private:
  std::shared_ptr<const CanonicalConnection> canonical_;
  DualConnection dual_;
  double lambda_;
};

/// (1 - omega) nabla^c + omega nabla-dual for an even form omega.
class OmegaConnection : public Connection {
public:
  OmegaConnection(std::shared_ptr<const CanonicalConnection> canonical, Form omega);

  int dim() const override { return canonical_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "omega-blend"; }
  const Form& omega() const { return omega_; }

private:
  std::shared_ptr<const CanonicalConnection> canonical_;
  DualConnection dual_;
  Form omega_;
};

/// Schouten connection of a base connection and a split.
class SchoutenConnection : public Connection {
public:
  SchoutenConnection(std::shared_ptr<const Connection> base, DistributionSplit split)
      : base_(std::move(base)), split_(std::move(split)) {}

  int dim() const override { return base_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "schouten"; }

private:
  std::shared_ptr<const Connection> base_;
  DistributionSplit split_;
};

/// Vranceanu connection of a base connection and a split.
class VranceanuConnection : public Connection {
public:
  VranceanuConnection(std::shared_ptr<const Connection> base, DistributionSplit split)
      : base_(std::move(base)), split_(std::move(split)) {}

  int dim() const override { return base_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "vranceanu"; }

private:
  std::shared_ptr<const Connection> base_;
  DistributionSplit split_;
};

namespace closed_form {

/// Torsion table of the canonical connection on frame generator pairs.
Derivation canonical_torsion(const ParallelFrame& frame, Gen gx, int j, Gen gy, int l);

/// Lambda-blend generator table.
Derivation lambda_table(const ParallelFrame& frame, double lambda, Gen gx, int j, Gen gy, int l);

/// Lambda-blend curvature on generator triples, with the structure-function
/// derivative terms.
Derivation lambda_curvature(const ParallelFrame& frame, double lambda, Gen gx, int j, Gen gy,
                            int k, Gen gz, int l);

/// Omega-blend curvature on generator triples; constant structure assumed.
Derivation omega_curvature(const ParallelFrame& frame, const Form& omega, Gen gx, int j, Gen gy,
                           int k, Gen gz, int l);

/// Omega-blend Ricci table on generator pairs; constant structure assumed.
Form omega_ricci(const ParallelFrame& frame, const Form& omega, Gen gx, int j, Gen gy, int l);

}  // namespace closed_form

/// Lie derivative of a full connection along X with unprojected brackets.
Derivation lie_full_conn(const Connection& conn, const Derivation& x, const Derivation& y,
                         const Derivation& z);

/// Residual of the dual-vs-canonical Lie-derivative identity
/// (L_X dual)(Y,Z) - (-1)^{|Y||Z|} (L_X canonical)(Z,Y).
Derivation dual_lie_residual(const CanonicalConnection& canonical, const DualConnection& dual,
                             const Derivation& x, const Derivation& y, const Derivation& z);

/// Residual of the flat-operator identity
/// (L_X dual)(Y,Z) + (-1)^{|Y||Z|} T^c(X, nabla^c_Z Y)
///   - (-1)^{(|X|+|Y|)|Z|} nabla^c_Z(T^c(X,Y));
/// requires nabla^c X = 0, checked at the probe points.
Derivation dual_lie_flat_residual(const CanonicalConnection& canonical,
                                  const DualConnection& dual, const Derivation& x,
                                  const Derivation& y, const Derivation& z,
                                  const std::vector<Point>& pts);

}  // namespace gconn
