#include "gconn/lie_derivative.hpp"

namespace gconn {

namespace {
double sgn(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

int parity_of(const Derivation& w, const char* who) {
  if (!w.is_homogeneous()) throw NonHomogeneous(std::string(who) + ": mixed-parity argument");
  return w.parity();
}
}  // namespace

void require_integrable(const DistributionSplit& split, const std::vector<Point>& pts,
                        double tol) {
  if (split.integrability_residual(pts) > tol)
    throw NotIntegrable("[D,D] has a component outside D at a sample point");
}

Derivation LieDerivatives::conn(const Derivation& x, const Derivation& y) const {
  return ss_ ? geo_->dss(x, y) : geo_->dlc(x, y);
}

Derivation LieDerivatives::nperp(const Derivation& x, const Derivation& n) const {
  return geo_->nperp(x, n);
}

Derivation LieDerivatives::bd(const Derivation& x, const Derivation& y) const {
  return geo_->bracket_d(x, y);
}

Derivation LieDerivatives::bperp(const Derivation& x, const Derivation& n) const {
  return geo_->bracket_perp(x, n);
}

// L_X(b)(Y,Z) := [X, b(Y,Z)]^side - (-1)^{|X||b|} b([X,Y]^D, Z)
//               - (-1)^{|X|(|b|+|Y|)} b(Y, [X,Z]^slot),
// where the value and the second slot live on `d_side` and the first slot in D.
Derivation LieDerivatives::lie_of(const Bilinear& b, int pb, bool d_side, const Derivation& x,
                                  const Derivation& y, const Derivation& z) const {
  int px = parity_of(x, "lie_of");
  int py = parity_of(y, "lie_of");
  const DistributionSplit& split = geo_->split();
  Derivation out = split.project(commutator(x, b(y, z)), d_side);
  out = out - b(bd(x, y), z).scaled(sgn(px * pb));
  Derivation zslot = split.project(commutator(x, z), d_side);
  out = out - b(y, zslot).scaled(sgn(px * (pb + py)));
  return out;
}

Derivation LieDerivatives::lie_conn(const Derivation& x, const Derivation& y,
                                    const Derivation& z) const {
  auto b = [this](const Derivation& a, const Derivation& c) { return conn(a, c); };
  return lie_of(b, 0, true, x, y, z);
}

Derivation LieDerivatives::lie_normal(const Derivation& x, const Derivation& y,
                                      const Derivation& n) const {
  auto b = [this](const Derivation& a, const Derivation& c) { return nperp(a, c); };
  return lie_of(b, 0, false, x, y, n);
}

Derivation LieDerivatives::commutator_lhs(const Bilinear& b, bool d_side, const Derivation& x,
                                          const Derivation& y, const Derivation& z,
                                          const Derivation& w) const {
  int px = parity_of(x, "commutator_lhs");
  int py = parity_of(y, "commutator_lhs");
  auto ly = [&](const Derivation& a, const Derivation& c) {
    return lie_of(b, 0, d_side, y, a, c);
  };
  auto lx = [&](const Derivation& a, const Derivation& c) {
    return lie_of(b, 0, d_side, x, a, c);
  };
  Derivation first = lie_of(ly, py, d_side, x, z, w);
  Derivation second = lie_of(lx, px, d_side, y, z, w);
  return first - second.scaled(sgn(px * py));
}

Derivation LieDerivatives::commutator_residual(const Derivation& x, const Derivation& y,
                                               const Derivation& z, const Derivation& w) const {
  int px = parity_of(x, "commutator_residual");
  int py = parity_of(y, "commutator_residual");
  int pz = parity_of(z, "commutator_residual");
  auto b = [this](const Derivation& a, const Derivation& c) { return conn(a, c); };
  const DistributionSplit& split = geo_->split();

  Derivation lhs = commutator_lhs(b, true, x, y, z, w);

  Derivation nz = conn(z, w);
  Derivation rhs =
      split.project(commutator(x, split.project(commutator(y, nz), true)), true) -
      split.project(commutator(y, split.project(commutator(x, nz), true)), true)
          .scaled(sgn(px * py));
  rhs = rhs + conn(bd(y, bd(x, z)), w).scaled(sgn(px * py));
  rhs = rhs + conn(z, bd(y, bd(x, w))).scaled(sgn(px * py + px * pz + py * pz));
  rhs = rhs - conn(bd(x, bd(y, z)), w);
  rhs = rhs - conn(z, bd(x, bd(y, w))).scaled(sgn((px + py) * pz));
  return lhs - rhs;
}

Derivation LieDerivatives::integrable_commutator_residual(const Derivation& x,
                                                          const Derivation& y,
                                                          const Derivation& z,
                                                          const Derivation& w,
                                                          const std::vector<Point>& pts) const {
  require_integrable(geo_->split(), pts);
  int px = parity_of(x, "integrable_commutator");
  int py = parity_of(y, "integrable_commutator");
  int pz = parity_of(z, "integrable_commutator");
  auto b = [this](const Derivation& a, const Derivation& c) { return conn(a, c); };
  const DistributionSplit& split = geo_->split();

  Derivation lhs = commutator_lhs(b, true, x, y, z, w);
  Derivation xy = split.project(commutator(x, y), true);
  Derivation rhs = split.project(commutator(xy, conn(z, w)), true) - conn(bd(xy, z), w) -
                   conn(z, bd(xy, w)).scaled(sgn((px + py) * pz));
  return lhs - rhs;
}

Derivation LieDerivatives::partial_curv(const Derivation& y, const Derivation& z,
                                        const Derivation& w) const {
  int py = parity_of(y, "partial_curv");
  int pz = parity_of(z, "partial_curv");
  return conn(y, conn(z, w)) - conn(z, conn(y, w)).scaled(sgn(py * pz)) - conn(bd(y, z), w);
}

Derivation LieDerivatives::curvature_residual(const Derivation& x, const Derivation& y,
                                              const Derivation& z, const Derivation& w,
                                              const std::vector<Point>& pts) const {
  require_integrable(geo_->split(), pts);
  int px = parity_of(x, "curvature_residual");
  int py = parity_of(y, "curvature_residual");
  int pz = parity_of(z, "curvature_residual");
  const DistributionSplit& split = geo_->split();

  Derivation lhs = split.project(commutator(x, partial_curv(y, z, w)), true);
  lhs = lhs - partial_curv(bd(x, y), z, w);
  lhs = lhs - partial_curv(y, bd(x, z), w).scaled(sgn(px * py));
  lhs = lhs - partial_curv(y, z, bd(x, w)).scaled(sgn(px * (py + pz)));

  Derivation rhs = -lie_conn(x, bd(y, z), w);
  rhs = rhs + lie_conn(x, y, conn(z, w));
  rhs = rhs + conn(y, lie_conn(x, z, w)).scaled(sgn(px * py));
  rhs = rhs - lie_conn(x, z, conn(y, w)).scaled(sgn(py * pz));
  rhs = rhs - conn(z, lie_conn(x, y, w)).scaled(sgn((px + py) * pz));
  return lhs - rhs;
}

Derivation LieDerivatives::normal_first_slot_residual(const Derivation& x, const Derivation& y,
                                                      const Derivation& n,
                                                      const Form& alpha) const {
  int px = parity_of(x, "normal_first_slot");
  if (!alpha.is_homogeneous_parity()) throw NonHomogeneous("scale form mixes parities");
  int pa = alpha.parity();
  Derivation lhs = lie_normal(x, mul_left(alpha, y), n);
  Derivation rhs = mul_left(alpha, lie_normal(x, y, n)).scaled(sgn(px * pa));
  return lhs - rhs;
}

Derivation LieDerivatives::normal_second_slot_residual(const Derivation& x, const Derivation& y,
                                                       const Derivation& n,
                                                       const Form& alpha) const {
  int px = parity_of(x, "normal_second_slot");
  int py = parity_of(y, "normal_second_slot");
  if (!alpha.is_homogeneous_parity()) throw NonHomogeneous("scale form mixes parities");
  int pa = alpha.parity();
  Derivation lhs = lie_normal(x, y, mul_left(alpha, n));
  Derivation rhs = mul_left(geo_->bracket_perp(x, y).apply(alpha), n);
  rhs = rhs + mul_left(alpha, lie_normal(x, y, n)).scaled(sgn((px + py) * pa));
  return lhs - rhs;
}

Derivation LieDerivatives::normal_commutator_residual(const Derivation& x, const Derivation& y,
                                                      const Derivation& z,
                                                      const Derivation& n) const {
  int px = parity_of(x, "normal_commutator");
  int py = parity_of(y, "normal_commutator");
  int pz = parity_of(z, "normal_commutator");
  auto b = [this](const Derivation& a, const Derivation& c) { return nperp(a, c); };
  const DistributionSplit& split = geo_->split();

  Derivation lhs = commutator_lhs(b, false, x, y, z, n);

  Derivation nn = nperp(z, n);
  Derivation rhs =
      split.project(commutator(x, split.project(commutator(y, nn), false)), false) -
      split.project(commutator(y, split.project(commutator(x, nn), false)), false)
          .scaled(sgn(px * py));
  rhs = rhs + nperp(bd(y, bd(x, z)), n).scaled(sgn(px * py));
  rhs = rhs + nperp(z, bperp(y, bperp(x, n))).scaled(sgn(px * py + px * pz + py * pz));
  rhs = rhs - nperp(bd(x, bd(y, z)), n);
  rhs = rhs - nperp(z, bperp(x, bperp(y, n))).scaled(sgn((px + py) * pz));
  return lhs - rhs;
}

Derivation LieDerivatives::normal_integrable_commutator_residual(
    const Derivation& x, const Derivation& y, const Derivation& z, const Derivation& n,
    const std::vector<Point>& pts) const {
  require_integrable(geo_->split(), pts);
  int px = parity_of(x, "normal_integrable_commutator");
  int py = parity_of(y, "normal_integrable_commutator");
  int pz = parity_of(z, "normal_integrable_commutator");
  auto b = [this](const Derivation& a, const Derivation& c) { return nperp(a, c); };
  const DistributionSplit& split = geo_->split();

  Derivation lhs = commutator_lhs(b, false, x, y, z, n);
  Derivation xy = split.project(commutator(x, y), true);
  Derivation rhs = split.project(commutator(xy, nperp(z, n)), false) - nperp(bd(xy, z), n) -
                   nperp(z, bperp(xy, n)).scaled(sgn((px + py) * pz));
  return lhs - rhs;
}

Derivation LieDerivatives::normal_curv(const Derivation& y, const Derivation& z,
                                       const Derivation& n) const {
  int py = parity_of(y, "normal_curv");
  int pz = parity_of(z, "normal_curv");
  return nperp(y, nperp(z, n)) - nperp(z, nperp(y, n)).scaled(sgn(py * pz)) - nperp(bd(y, z), n);
}

Derivation LieDerivatives::normal_curvature_residual(const Derivation& x, const Derivation& y,
                                                     const Derivation& z, const Derivation& n,
                                                     const std::vector<Point>& pts) const {
  require_integrable(geo_->split(), pts);
  int px = parity_of(x, "normal_curvature");
  int py = parity_of(y, "normal_curvature");
  int pz = parity_of(z, "normal_curvature");
  const DistributionSplit& split = geo_->split();

  Derivation lhs = split.project(commutator(x, normal_curv(y, z, n)), false);
  lhs = lhs - normal_curv(bd(x, y), z, n);
  lhs = lhs - normal_curv(y, bd(x, z), n).scaled(sgn(px * py));
  lhs = lhs - normal_curv(y, z, bperp(x, n)).scaled(sgn(px * (py + pz)));

  Derivation rhs = -lie_normal(x, bd(y, z), n);
  rhs = rhs + lie_normal(x, y, nperp(z, n));
  rhs = rhs + nperp(y, lie_normal(x, z, n)).scaled(sgn(px * py));
  rhs = rhs - lie_normal(x, z, nperp(y, n)).scaled(sgn(py * pz));
  rhs = rhs - nperp(z, lie_normal(x, y, n)).scaled(sgn((px + py) * pz));
  return lhs - rhs;
}

}  // namespace gconn
