#pragma once

#include <memory>
#include <string>
#include <utility>

#include "gconn/metric.hpp"

namespace gconn {

/// Even graded connection on Der Omega(M): Omega-linear in the first slot,
/// graded Leibniz in the second.
class Connection {
public:
  virtual ~Connection() = default;
  virtual int dim() const = 0;
  virtual Derivation eval(const Derivation& x, const Derivation& y) const = 0;
  virtual std::string kind() const = 0;
};

/// Lift of the Levi-Civita connection of g to Der Omega(M):
/// nabla_{L}L = L_{nabla^g}, nabla_{L}i = nabla_{i}L = i_{nabla^g}, nabla_{i}i = 0.
class LeviCivitaLift : public Connection {
public:
  explicit LeviCivitaLift(std::shared_ptr<const MetricG> g);

  int dim() const override { return g_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "levi-civita-lift"; }

  const MetricG& metric() const { return *g_; }

private:
  Derivation generator_value(Gen tg, int j, Gen sg, int k) const;

  std::shared_ptr<const MetricG> g_;
  std::vector<Derivation> table_;  // cached generator pair values
};

/// nabla_X Y = nabla^L_X Y + X.<Y,P;G> - <X,Y;G>.P for an odd derivation P.
class SemiSymmetric : public Connection {
public:
  SemiSymmetric(std::shared_ptr<const LeviCivitaLift> base, GradedMetric gm, Derivation p);

  int dim() const override { return base_->dim(); }
  Derivation eval(const Derivation& x, const Derivation& y) const override;
  std::string kind() const override { return "semi-symmetric"; }

  const LeviCivitaLift& base() const { return *base_; }
  const GradedMetric& graded_metric() const { return gm_; }
  const Derivation& p() const { return p_; }

private:
  std::shared_ptr<const LeviCivitaLift> base_;
  GradedMetric gm_;
  Derivation p_;
};

/// T(X,Y) = nabla_X Y - (-1)^{|X||Y|} nabla_Y X - [X,Y]; homogeneous inputs.
Derivation torsion(const Connection& conn, const Derivation& x, const Derivation& y);

/// R(X,Y)Z = nabla_X nabla_Y Z - (-1)^{|X||Y|} nabla_Y nabla_X Z - nabla_{[X,Y]}Z.
Derivation curvature(const Connection& conn, const Derivation& x, const Derivation& y,
                     const Derivation& z);

/// Ric(X,Y) = sum_k <R(L_{E_k},X)Y, i_{E_k}> - (-1)^{|X|+|Y|} sum_l <R(i_{E_l},X)Y, L_{E_l}>
/// over an orthonormal frame E.
Form ricci(const Connection& conn, const GradedMetric& gm, const OrthoFrame& frame,
           const Derivation& x, const Derivation& y);

/// X<Y,Z> - <nabla_X Y, Z> - (-1)^{|X||Y|} <Y, nabla_X Z>.
Form metric_compat_residual(const Connection& conn, const GradedMetric& gm, const Derivation& x,
                            const Derivation& y, const Derivation& z);

/// Right side of the Koszul formula for 2<nabla^L_X Y, Z>.
Form koszul_rhs(const GradedMetric& gm, const Derivation& x, const Derivation& y,
                const Derivation& z);

/// Closed generator-pair and curvature displays used as two-route oracles.
/// Each returns the closed-form value; callers subtract the definitional path.
namespace closed_form {

/// Torsion of the semi-symmetric connection:
/// T(X,Y) = X.<Y,P> - (-1)^{|X||Y|} Y.<X,P>.
Derivation semisym_torsion(const GradedMetric& gm, const Derivation& p, const Derivation& x,
                           const Derivation& y);

/// General curvature of the semi-symmetric connection in terms of R^L,
/// nabla^L P and pairings.
Derivation semisym_curvature(const LeviCivitaLift& lc, const GradedMetric& gm,
                             const Derivation& p, const Derivation& x, const Derivation& y,
                             const Derivation& z);

/// Generator rules of nabla for P = i_U on lifts of vector fields.
Derivation conn_iU(const MetricG& g, const VectorField& u, Gen gx, const VectorField& xb, Gen gy,
                   const VectorField& yb);

/// Generator rules of nabla' for P = omega L_U (omega odd).
Derivation conn_omegaLU(const MetricG& g, const VectorField& u, const Form& omega, Gen gx,
                        const VectorField& xb, Gen gy, const VectorField& yb);

/// Curvature of the lifted Levi-Civita connection on generator triples.
Derivation curv_lc(const MetricG& g, Gen gx, const VectorField& xb, Gen gy,
                   const VectorField& yb, Gen gz, const VectorField& zb);

/// Curvature of nabla for P = i_U on generator triples.
Derivation curv_iU(const MetricG& g, const VectorField& u, Gen gx, const VectorField& xb, Gen gy,
                   const VectorField& yb, Gen gz, const VectorField& zb);

/// Curvature of nabla' for P = omega L_U on generator triples.
Derivation curv_omegaLU(const MetricG& g, const VectorField& u, const Form& omega, Gen gx,
                        const VectorField& xb, Gen gy, const VectorField& yb, Gen gz,
                        const VectorField& zb);

}  // namespace closed_form

/// Both orderings of the Einstein residual Ric'(X,Y) + G(X,Y).L_U(omega):
/// first = G-then-L_U(omega) wedge order, second = the reverse.
std::pair<Form, Form> einstein_residuals(const Connection& conn, const GradedMetric& gm,
                                         const OrthoFrame& frame, const VectorField& u,
                                         const Form& omega, const Derivation& x,
                                         const Derivation& y);

}  // namespace gconn
