#include "gconn/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace gconn {

DistributionSplit::DistributionSplit(std::vector<VectorField> frame_rows, std::set<int> d_indices)
    : basis_(std::move(frame_rows)), d_(std::move(d_indices)) {
  for (int k : d_)
    if (k < 1 || k > dim()) throw ValidationError("distribution.D", "frame index out of range");
}

DistributionSplit DistributionSplit::coordinate(int dim, std::set<int> d_indices) {
  std::vector<VectorField> rows;
  for (int j = 1; j <= dim; ++j) rows.push_back(VectorField::coordinate(dim, j));
  return DistributionSplit(std::move(rows), std::move(d_indices));
}

Derivation DistributionSplit::gen(Gen g, int k) const { return basis_.gen(g, k); }

std::vector<Derivation> DistributionSplit::side_generators(bool d_side) const {
  std::vector<Derivation> out;
  for (Gen g : {Gen::L, Gen::I})
    for (int k = 1; k <= dim(); ++k)
      if (in_d(k) == d_side) out.push_back(gen(g, k));
  return out;
}

std::pair<std::vector<Form>, std::vector<Form>> DistributionSplit::expand(
    const Derivation& w) const {
  return basis_.expand(w);
}

Derivation DistributionSplit::project(const Derivation& w, bool d_side) const {
  auto [omega, omega_i] = expand(w);
  Derivation out(dim());
  for (int k = 1; k <= dim(); ++k) {
    if (in_d(k) != d_side) continue;
    out = out + mul_left(omega[static_cast<std::size_t>(k - 1)], gen(Gen::L, k));
    out = out + mul_left(omega_i[static_cast<std::size_t>(k - 1)], gen(Gen::I, k));
  }
  return out;
}

void DistributionSplit::require_in(const Derivation& w, bool d_side, const std::vector<Point>& pts,
                                   double tol) const {
  Derivation wrong = project(w, !d_side);
  for (const auto& p : pts) {
    if (wrong.max_abs(p) > tol)
      throw NotInDistribution("derivation has a component outside the requested side");
  }
}

double DistributionSplit::integrability_residual(const std::vector<Point>& pts) const {
  double worst = 0.0;
  auto gens = side_generators(true);
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a; b < gens.size(); ++b) {
      Derivation perp = project(commutator(gens[a], gens[b]), false);
      for (const auto& p : pts) worst = std::max(worst, perp.max_abs(p));
    }
  }
  return worst;
}

// --- SplitGeometry -----------------------------------------------------------

SplitGeometry::SplitGeometry(DistributionSplit split, std::shared_ptr<const LeviCivitaLift> lc,
                             GradedMetric gm, Derivation p)
    : split_(std::move(split)),
      lc_(std::move(lc)),
      gm_(std::move(gm)),
      p_(std::move(p)),
      ss_(lc_, gm_, p_) {}

Derivation SplitGeometry::dlc(const Derivation& x, const Derivation& y) const {
  return split_.project(lc_->eval(x, y), true);
}

Derivation SplitGeometry::dss(const Derivation& x, const Derivation& y) const {
  return split_.project(ss_.eval(x, y), true);
}

Derivation SplitGeometry::b(const Derivation& x, const Derivation& y) const {
  return split_.project(lc_->eval(x, y), false);
}

Derivation SplitGeometry::bt(const Derivation& x, const Derivation& y) const {
  return split_.project(ss_.eval(x, y), false);
}

Derivation SplitGeometry::nperp(const Derivation& x, const Derivation& xi) const {
  return split_.project(lc_->eval(x, xi), false);
}

Derivation SplitGeometry::shape(const Derivation& x, const Derivation& xi) const {
  return -split_.project(lc_->eval(x, xi), true);
}

Derivation SplitGeometry::shape_t(const Derivation& x, const Derivation& xi) const {
  return shape(x, xi) - mul_right(x, gm_.pair(xi, p_));
}

Derivation SplitGeometry::bracket_d(const Derivation& x, const Derivation& y) const {
  return split_.project(commutator(x, y), true);
}

Derivation SplitGeometry::bracket_perp(const Derivation& x, const Derivation& y) const {
  return split_.project(commutator(x, y), false);
}

namespace {
double sgn(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

int parity_of(const Derivation& w, const char* who) {
  if (!w.is_homogeneous()) throw NonHomogeneous(std::string(who) + ": mixed-parity argument");
  return w.parity();
}
}  // namespace

Derivation SplitGeometry::curv_d(const Derivation& x, const Derivation& y,
                                 const Derivation& z) const {
  int px = parity_of(x, "curv_d");
  int py = parity_of(y, "curv_d");
  return dss(x, dss(y, z)) - dss(y, dss(x, z)).scaled(sgn(px * py)) - dss(bracket_d(x, y), z) -
         split_.project(commutator(bracket_perp(x, y), z), true);
}

Derivation SplitGeometry::curv_perp(const Derivation& x, const Derivation& y,
                                    const Derivation& xi) const {
  int px = parity_of(x, "curv_perp");
  int py = parity_of(y, "curv_perp");
  return nperp(x, nperp(y, xi)) - nperp(y, nperp(x, xi)).scaled(sgn(px * py)) -
         nperp(bracket_d(x, y), xi) - split_.project(ss_.eval(bracket_perp(x, y), xi), false);
}

Form SplitGeometry::gauss_residual(const Derivation& x, const Derivation& y, const Derivation& z,
                                   const Derivation& w) const {
  int px = parity_of(x, "gauss");
  int py = parity_of(y, "gauss");
  int pz = parity_of(z, "gauss");
  int pw = parity_of(w, "gauss");
  auto G = [&](const Derivation& a, const Derivation& bb) { return gm_.pair(a, bb); };
  auto c = [](double v) { return ScalarExpr::constant(v); };

  Form lhs = G(curvature(ss_, x, y, z), w);

  Derivation uperp = u_perp();
  Form guu = G(uperp, uperp);

  Form rhs = G(curv_d(x, y, z), w);
  rhs = rhs - G(b(x, w), b(y, z)).mul_scalar(c(sgn((py + pz) * pw)));
  rhs = rhs + G(b(y, w), b(x, z)).mul_scalar(c(sgn(px * py + (px + pz) * pw)));
  rhs = rhs + wedge(G(b(x, w), p_), G(y, z)).mul_scalar(c(sgn((py + pz) * pw)));
  rhs = rhs - wedge(G(b(y, w), p_), G(x, z)).mul_scalar(c(sgn(px * py + (px + pz) * pw)));
  rhs = rhs + wedge(G(b(y, z), p_), G(x, w)).mul_scalar(c(sgn(px * (py + pz))));
  rhs = rhs - wedge(G(b(x, z), p_), G(y, w)).mul_scalar(c(sgn(py * pz)));
  rhs = rhs - wedge(G(y, z), wedge(guu, G(x, w))).mul_scalar(c(sgn(px * (py + pz))));
  rhs = rhs + wedge(G(x, z), wedge(guu, G(y, w))).mul_scalar(c(sgn(py * pz)));
  rhs = rhs + G(commutator(x, y), b(z, w));

  return lhs - rhs;
}

Derivation SplitGeometry::codazzi_residual(const Derivation& x, const Derivation& y,
                                           const Derivation& z) const {
  int px = parity_of(x, "codazzi");
  int py = parity_of(y, "codazzi");
  int pz = parity_of(z, "codazzi");

  Derivation lhs = split_.project(curvature(ss_, x, y, z), false);

  // (nabla-perp_a Bt)(b1, b2)
  auto nab_bt = [&](const Derivation& a, const Derivation& b1, const Derivation& b2, int pa,
                    int pb1) {
    return nperp(a, bt(b1, b2)) - bt(dss(a, b1), b2) - bt(b1, dss(a, b2)).scaled(sgn(pa * pb1));
  };

  Derivation zperp = bracket_perp(x, y);
  Derivation rhs = nab_bt(x, y, z, px, py) - nab_bt(y, x, z, py, px).scaled(sgn(px * py));
  rhs = rhs - mul_left(gm_.pair(x, p_), bt(y, z));
  rhs = rhs + mul_left(gm_.pair(y, p_), bt(x, z)).scaled(sgn(px * py));
  rhs = rhs - split_.project(commutator(zperp, z), false);
  rhs = rhs - nperp(z, zperp).scaled(sgn((px + py) * pz));
  rhs = rhs - mul_right(zperp, gm_.pair(z, p_));

  return lhs - rhs;
}

Derivation SplitGeometry::ricci_eq_residual(const Derivation& x, const Derivation& y,
                                            const Derivation& xi) const {
  int px = parity_of(x, "ricci_eq");
  int py = parity_of(y, "ricci_eq");

  Derivation lhs = split_.project(curvature(ss_, x, y, xi), false);
  Derivation rhs = -bt(x, shape_t(y, xi)) + bt(y, shape_t(x, xi)).scaled(sgn(px * py)) +
                   curv_perp(x, y, xi);
  return lhs - rhs;
}

Derivation SplitGeometry::partial_torsion_residual(const Derivation& x,
                                                   const Derivation& y) const {
  int px = parity_of(x, "partial_torsion");
  int py = parity_of(y, "partial_torsion");
  return dlc(x, y) - dlc(y, x).scaled(sgn(px * py)) - commutator(x, y) + bracket_perp(x, y);
}

Form SplitGeometry::partial_metricity_residual(const Derivation& x, const Derivation& y,
                                               const Derivation& z) const {
  int px = parity_of(x, "partial_metricity");
  int py = parity_of(y, "partial_metricity");
  return x.apply(gm_.pair(y, z)) - gm_.pair(dlc(x, y), z) -
         gm_.pair(y, dlc(x, z)).mul_scalar(ScalarExpr::constant(sgn(px * py)));
}

Derivation SplitGeometry::b_symmetry_residual(const Derivation& x, const Derivation& y) const {
  int px = parity_of(x, "b_symmetry");
  int py = parity_of(y, "b_symmetry");
  return b(x, y) - b(y, x).scaled(sgn(px * py)) - bracket_perp(x, y);
}

Form SplitGeometry::partial_koszul_residual(const Derivation& x, const Derivation& y,
                                            const Derivation& z) const {
  int px = parity_of(x, "partial_koszul");
  int py = parity_of(y, "partial_koszul");
  int pz = parity_of(z, "partial_koszul");
  Form rhs = x.apply(gm_.pair(y, z)) + gm_.pair(bracket_d(x, y), z);
  Form mid = y.apply(gm_.pair(z, x)) - gm_.pair(bracket_d(y, z), x);
  rhs = rhs + mid.mul_scalar(ScalarExpr::constant(sgn(px * (py + pz))));
  Form last = z.apply(gm_.pair(x, y)) - gm_.pair(bracket_d(z, x), y);
  rhs = rhs - last.mul_scalar(ScalarExpr::constant(sgn(pz * (px + py))));
  return gm_.pair(dlc(x, y), z).mul_scalar(ScalarExpr::constant(2.0)) - rhs;
}

Derivation SplitGeometry::dss_display_residual(const Derivation& x, const Derivation& y) const {
  return dss(x, y) - dlc(x, y) - mul_right(x, gm_.pair(y, p_)) + mul_left(gm_.pair(x, y), u_d());
}

Derivation SplitGeometry::bt_display_residual(const Derivation& x, const Derivation& y) const {
  return bt(x, y) - b(x, y) + mul_left(gm_.pair(x, y), u_perp());
}

Form SplitGeometry::dss_metricity_residual(const Derivation& x, const Derivation& y,
                                           const Derivation& z) const {
  int px = parity_of(x, "dss_metricity");
  int py = parity_of(y, "dss_metricity");
  return x.apply(gm_.pair(y, z)) - gm_.pair(dss(x, y), z) -
         gm_.pair(y, dss(x, z)).mul_scalar(ScalarExpr::constant(sgn(px * py)));
}

Derivation SplitGeometry::dss_torsion_residual(const Derivation& x, const Derivation& y) const {
  int px = parity_of(x, "dss_torsion");
  int py = parity_of(y, "dss_torsion");
  Derivation lhs = dss(x, y) - dss(y, x).scaled(sgn(px * py)) - commutator(x, y);
  Derivation rhs = -bracket_perp(x, y) + mul_right(x, gm_.pair(y, p_)) -
                   mul_right(y, gm_.pair(x, p_)).scaled(sgn(px * py));
  return lhs - rhs;
}

Derivation SplitGeometry::normal_rule_residual(const Derivation& x, const Derivation& xi) const {
  return ss_.eval(x, xi) - lc_->eval(x, xi) - mul_right(x, gm_.pair(xi, p_));
}

Form SplitGeometry::adjoint_residual(const Derivation& x, const Derivation& y,
                                     const Derivation& xi) const {
  int px = parity_of(x, "adjoint");
  int py = parity_of(y, "adjoint");
  return gm_.pair(b(x, y), xi) -
         gm_.pair(y, shape(x, xi)).mul_scalar(ScalarExpr::constant(sgn(px * py)));
}

Derivation SplitGeometry::weingarten_residual(const Derivation& x, const Derivation& xi) const {
  return ss_.eval(x, xi) + shape_t(x, xi) - nperp(x, xi);
}

Derivation SplitGeometry::exchange_residual(const Derivation& x, const Derivation& y) const {
  int px = parity_of(x, "exchange");
  int py = parity_of(y, "exchange");
  double s = sgn(px * py);
  return ss_.eval(x, y) - ss_.eval(y, x).scaled(s) - commutator(x, y) -
         mul_right(x, gm_.pair(y, p_)) + mul_right(y, gm_.pair(x, p_)).scaled(s);
}

}  // namespace gconn
