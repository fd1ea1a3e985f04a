#include "gconn/connection.hpp"

namespace gconn {

namespace {

Derivation gen_lift(Gen g, const VectorField& v) {
  return g == Gen::L ? Derivation::lift_L(v) : Derivation::lift_i(v);
}

int parity_of(const Derivation& w, const char* who) {
  if (!w.is_homogeneous()) throw NonHomogeneous(std::string(who) + ": mixed-parity argument");
  return w.parity();
}

double sgn(int exponent) { return exponent % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

// --- LeviCivitaLift -----------------------------------------------------------

LeviCivitaLift::LeviCivitaLift(std::shared_ptr<const MetricG> g) : g_(std::move(g)) {
  int m = g_->dim();
  table_.reserve(static_cast<std::size_t>(4 * m * m));
  for (int tg = 0; tg < 2; ++tg) {
    for (int j = 1; j <= m; ++j) {
      for (int sg = 0; sg < 2; ++sg) {
        for (int k = 1; k <= m; ++k) {
          if (tg == 1 && sg == 1) {
            table_.push_back(Derivation(m));
            continue;
          }
          VectorField gamma(m);
          for (int mu = 1; mu <= m; ++mu) gamma.comp(mu) = g_->christoffel(mu, j, k);
          // L over L lifts to L, every other combination to i.
          table_.push_back(tg == 0 && sg == 0 ? Derivation::lift_L(gamma)
                                              : Derivation::lift_i(gamma));
        }
      }
    }
  }
}

Derivation LeviCivitaLift::generator_value(Gen tg, int j, Gen sg, int k) const {
  int m = g_->dim();
  std::size_t i =
      ((static_cast<std::size_t>(tg == Gen::I) * m + (j - 1)) * 2 +
       static_cast<std::size_t>(sg == Gen::I)) *
          m +
      (k - 1);
  return table_[i];
}

Derivation LeviCivitaLift::eval(const Derivation& x, const Derivation& y) const {
  int m = dim();
  Derivation out(m);
  for (const auto& tx : x.terms()) {
    // First slot is Omega-linear, so each X-term acts through its generator.
    Derivation inner(m);
    for (const auto& ty : y.terms()) {
      // nabla_{T}(alpha S) = T(alpha) S + (-1)^{|T||alpha|} alpha nabla_T S.
      Form t_alpha = tx.gen == Gen::L
                         ? ty.coeff.dcoord(tx.index)
                         : ty.coeff.interior(VectorField::coordinate(m, tx.index));
      inner = inner + mul_left(t_alpha, Derivation::generator(m, ty.gen, ty.index));
      Derivation base = generator_value(tx.gen, tx.index, ty.gen, ty.index);
      for (const Form& ah : {ty.coeff.even_part(), ty.coeff.odd_part()}) {
        if (ah.is_structurally_zero()) continue;
        double sign = sgn(gen_parity(tx.gen) * ah.parity());
        inner = inner + mul_left(ah.mul_scalar(ScalarExpr::constant(sign)), base);
      }
    }
    out = out + mul_left(tx.coeff, inner);
  }
  return out;
}

// --- SemiSymmetric -------------------------------------------------------------

SemiSymmetric::SemiSymmetric(std::shared_ptr<const LeviCivitaLift> base, GradedMetric gm,
                             Derivation p)
    : base_(std::move(base)), gm_(std::move(gm)), p_(std::move(p)) {
  if (!p_.is_structurally_zero() && (!p_.is_homogeneous() || p_.parity() != 1))
    throw ParityViolation("semi-symmetric connection requires an odd P");
}

Derivation SemiSymmetric::eval(const Derivation& x, const Derivation& y) const {
  Derivation out = base_->eval(x, y);
  if (p_.is_structurally_zero()) return out;
  out = out + mul_right(x, gm_.pair(y, p_));
  out = out - mul_left(gm_.pair(x, y), p_);
  return out;
}

// --- tensor operations ---------------------------------------------------------

Derivation torsion(const Connection& conn, const Derivation& x, const Derivation& y) {
  int px = parity_of(x, "torsion");
  int py = parity_of(y, "torsion");
  return conn.eval(x, y) - conn.eval(y, x).scaled(sgn(px * py)) - commutator(x, y);
}

Derivation curvature(const Connection& conn, const Derivation& x, const Derivation& y,
                     const Derivation& z) {
  int px = parity_of(x, "curvature");
  int py = parity_of(y, "curvature");
  return conn.eval(x, conn.eval(y, z)) -
         conn.eval(y, conn.eval(x, z)).scaled(sgn(px * py)) -
         conn.eval(commutator(x, y), z);
}

Form ricci(const Connection& conn, const GradedMetric& gm, const OrthoFrame& frame,
           const Derivation& x, const Derivation& y) {
  int px = parity_of(x, "ricci");
  int py = parity_of(y, "ricci");
  int m = conn.dim();
  Form out(m);
  for (int k = 1; k <= frame.size(); ++k) {
    Derivation lk = Derivation::lift_L(frame.row(k));
    out = out + gm.pair(curvature(conn, lk, x, y), Derivation::lift_i(frame.row(k)));
  }
  double s = sgn(px + py);
  for (int l = 1; l <= frame.size(); ++l) {
    Derivation il = Derivation::lift_i(frame.row(l));
    out = out - gm.pair(curvature(conn, il, x, y), Derivation::lift_L(frame.row(l)))
                    .mul_scalar(ScalarExpr::constant(s));
  }
  return out;
}

Form metric_compat_residual(const Connection& conn, const GradedMetric& gm, const Derivation& x,
                            const Derivation& y, const Derivation& z) {
  int px = parity_of(x, "metric_compat");
  int py = parity_of(y, "metric_compat");
  return x.apply(gm.pair(y, z)) - gm.pair(conn.eval(x, y), z) -
         gm.pair(y, conn.eval(x, z)).mul_scalar(ScalarExpr::constant(sgn(px * py)));
}

Form koszul_rhs(const GradedMetric& gm, const Derivation& x, const Derivation& y,
                const Derivation& z) {
  int px = parity_of(x, "koszul_rhs");
  int py = parity_of(y, "koszul_rhs");
  int pz = parity_of(z, "koszul_rhs");
  Form out = x.apply(gm.pair(y, z)) + gm.pair(commutator(x, y), z);
  Form mid = y.apply(gm.pair(z, x)) - gm.pair(commutator(y, z), x);
  out = out + mid.mul_scalar(ScalarExpr::constant(sgn(px * (py + pz))));
  Form last = z.apply(gm.pair(x, y)) - gm.pair(commutator(z, x), y);
  out = out - last.mul_scalar(ScalarExpr::constant(sgn(pz * (px + py))));
  return out;
}

// --- closed forms ----------------------------------------------------------------

namespace closed_form {

Derivation semisym_torsion(const GradedMetric& gm, const Derivation& p, const Derivation& x,
                           const Derivation& y) {
  int px = parity_of(x, "semisym_torsion");
  int py = parity_of(y, "semisym_torsion");
  return mul_right(x, gm.pair(y, p)) - mul_right(y, gm.pair(x, p)).scaled(sgn(px * py));
}

Derivation semisym_curvature(const LeviCivitaLift& lc, const GradedMetric& gm,
                             const Derivation& p, const Derivation& x, const Derivation& y,
                             const Derivation& z) {
  int px = parity_of(x, "semisym_curvature");
  int py = parity_of(y, "semisym_curvature");
  int pz = parity_of(z, "semisym_curvature");
  auto G = [&](const Derivation& a, const Derivation& b) { return gm.pair(a, b); };
  auto c = [](double v) { return ScalarExpr::constant(v); };

  Derivation nxp = lc.eval(x, p);
  Derivation nyp = lc.eval(y, p);
  int pGyz = (py + pz + 1) % 2;
  int pGxz = (px + pz + 1) % 2;

  Derivation out = curvature(lc, x, y, z);
  out = out + mul_left(G(z, nxp).mul_scalar(c(sgn((px + py) * pz))), y);
  out = out - mul_left(G(z, nyp).mul_scalar(c(sgn(px * py + (px + py) * pz))), x);
  out = out - mul_left(G(y, z).mul_scalar(c(sgn(pGyz * px))), nxp);
  out = out + mul_left(G(x, z).mul_scalar(c(sgn(px * py + pGxz * py))), nyp);
  out = out + mul_left(wedge(G(z, p), G(y, p)).mul_scalar(c(sgn(px * (py + pz) + py * pz))), x);
  out = out - mul_left(wedge(G(y, z), G(p, p)).mul_scalar(c(sgn(px * (py + pz)))), x);
  out = out - mul_left(wedge(G(z, p), G(x, p)).mul_scalar(c(sgn((px + py) * pz))), y);
  out = out + mul_left(wedge(G(x, z), G(p, p)).mul_scalar(c(sgn(py * pz))), y);
  out = out + mul_left(wedge(G(y, z), G(x, p)).mul_scalar(c(sgn(px * pGyz))), p);
  out = out - mul_left(wedge(G(x, z), G(y, p)).mul_scalar(c(sgn(px * py + py * pGxz))), p);
  return out;
}

namespace {

struct VfCtx {
  const MetricG& g;
  int m;

  Form gf(const VectorField& a, const VectorField& b) const {
    return Form::scalar(m, g.g_scalar(a, b));
  }
  Form dgf(const VectorField& a, const VectorField& b) const { return gf(a, b).d(); }
};

}  // namespace

Derivation conn_iU(const MetricG& g, const VectorField& u, Gen gx, const VectorField& xb, Gen gy,
                   const VectorField& yb) {
  VfCtx c{g, g.dim()};
  Derivation iu = Derivation::lift_i(u);
  VectorField nab = g.nabla(xb, yb);
  if (gx == Gen::L && gy == Gen::L) {
    return Derivation::lift_L(nab) + mul_left(c.gf(yb, u), Derivation::lift_L(xb)) -
           mul_left(c.dgf(xb, yb), iu);
  }
  if (gx == Gen::L && gy == Gen::I) {
    return Derivation::lift_i(nab) - mul_left(c.gf(xb, yb), iu);
  }
  if (gx == Gen::I && gy == Gen::L) {
    return Derivation::lift_i(nab) + mul_left(c.gf(yb, u), Derivation::lift_i(xb)) -
           mul_left(c.gf(xb, yb), iu);
  }
  return Derivation(g.dim());
}

Derivation conn_omegaLU(const MetricG& g, const VectorField& u, const Form& omega, Gen gx,
                        const VectorField& xb, Gen gy, const VectorField& yb) {
  VfCtx c{g, g.dim()};
  Derivation lu = Derivation::lift_L(u);
  VectorField nab = g.nabla(xb, yb);
  Form gyu = c.gf(yb, u);
  Form gxy = c.gf(xb, yb);
  if (gx == Gen::L && gy == Gen::L) {
    return Derivation::lift_L(nab) + mul_left(wedge(omega, gyu.d()), Derivation::lift_L(xb)) -
           mul_left(wedge(gxy.d(), omega), lu);
  }
  if (gx == Gen::L && gy == Gen::I) {
    return Derivation::lift_i(nab) - mul_left(wedge(omega, gyu), Derivation::lift_L(xb)) -
           mul_left(wedge(gxy, omega), lu);
  }
  if (gx == Gen::I && gy == Gen::L) {
    return Derivation::lift_i(nab) + mul_left(wedge(omega, gyu.d()), Derivation::lift_i(xb)) -
           mul_left(wedge(gxy, omega), lu);
  }
  return mul_left(wedge(omega, gyu), Derivation::lift_i(xb));
}

Derivation curv_lc(const MetricG& g, Gen gx, const VectorField& xb, Gen gy,
                   const VectorField& yb, Gen gz, const VectorField& zb) {
  // First-slot i against second-slot L routes through graded antisymmetry
  // R(i,L) = -R(L,i); the table lists first-slot-L and (i,i) cases only.
  if (gx == Gen::I && gy == Gen::L) return -curv_lc(g, gy, yb, gx, xb, gz, zb);
  VectorField r = g.curvature(xb, yb, zb);
  if (gx == Gen::I && gy == Gen::I) return Derivation(g.dim());
  if (gx == Gen::L && gy == Gen::I && gz == Gen::I) return Derivation(g.dim());
  if (gx == Gen::L && gy == Gen::L && gz == Gen::L) return Derivation::lift_L(r);
  return Derivation::lift_i(r);
}

Derivation curv_iU(const MetricG& g, const VectorField& u, Gen gx, const VectorField& xb, Gen gy,
                   const VectorField& yb, Gen gz, const VectorField& zb) {
  if (gx == Gen::I && gy == Gen::L)
    return -curv_iU(g, u, gy, yb, gx, xb, gz, zb);
  VfCtx c{g, g.dim()};
  int m = g.dim();
  Derivation iu = Derivation::lift_i(u);
  VectorField nxu = g.nabla(xb, u);
  VectorField nyu = g.nabla(yb, u);
  Form gzu = c.gf(zb, u);
  Form gxu = c.gf(xb, u);
  Form gyu = c.gf(yb, u);
  Form gyz = c.gf(yb, zb);
  Form gxz = c.gf(xb, zb);

  if (gx == Gen::L && gy == Gen::L && gz == Gen::L) {
    VectorField r = g.curvature(xb, yb, zb);
    return Derivation::lift_L(r) + mul_left(c.gf(zb, nxu), Derivation::lift_L(yb)) -
           mul_left(c.gf(zb, nyu), Derivation::lift_L(xb)) -
           mul_left(gyz.d(), Derivation::lift_i(nxu)) +
           mul_left(gxz.d(), Derivation::lift_i(nyu)) +
           mul_left(wedge(gzu, gyu), Derivation::lift_L(xb)) -
           mul_left(wedge(gzu, gxu), Derivation::lift_L(yb)) +
           mul_left(wedge(gyz.d(), gxu), iu) - mul_left(wedge(gxz.d(), gyu), iu);
  }
  if (gx == Gen::L && gy == Gen::L && gz == Gen::I) {
    VectorField r = g.curvature(xb, yb, zb);
    return Derivation::lift_i(r) - mul_left(gyz, Derivation::lift_i(nxu)) +
           mul_left(gxz, Derivation::lift_i(nyu)) + mul_left(wedge(gyz, gxu), iu) -
           mul_left(wedge(gxz, gyu), iu);
  }
  if (gx == Gen::L && gy == Gen::I && gz == Gen::L) {
    VectorField r = g.curvature(xb, yb, zb);
    return Derivation::lift_i(r) + mul_left(c.gf(zb, nxu), Derivation::lift_i(yb)) -
           mul_left(gyz, Derivation::lift_i(nxu)) -
           mul_left(wedge(gzu, gxu), Derivation::lift_i(yb)) + mul_left(wedge(gyz, gxu), iu);
  }
  return Derivation(m);
}

Derivation curv_omegaLU(const MetricG& g, const VectorField& u, const Form& omega, Gen gx,
                        const VectorField& xb, Gen gy, const VectorField& yb, Gen gz,
                        const VectorField& zb) {
  if (gx == Gen::I && gy == Gen::L)
    return -curv_omegaLU(g, u, omega, gy, yb, gx, xb, gz, zb);
  VfCtx c{g, g.dim()};
  int m = g.dim();
  Derivation lu = Derivation::lift_L(u);
  VectorField nxu = g.nabla(xb, u);
  VectorField nyu = g.nabla(yb, u);
  Form lxo = omega.lie(xb);
  Form lyo = omega.lie(yb);
  Form ixo = omega.interior(xb);
  Form iyo = omega.interior(yb);
  Form gzu = c.gf(zb, u);
  Form gyz = c.gf(yb, zb);
  Form gxz = c.gf(xb, zb);

  if (gx == Gen::L && gy == Gen::L && gz == Gen::L) {
    VectorField r = g.curvature(xb, yb, zb);
    return Derivation::lift_L(r) + mul_left(wedge(lxo, gzu.d()), Derivation::lift_L(yb)) +
           mul_left(wedge(omega, c.dgf(zb, nxu)), Derivation::lift_L(yb)) -
           mul_left(wedge(lyo, gzu.d()), Derivation::lift_L(xb)) -
           mul_left(wedge(omega, c.dgf(zb, nyu)), Derivation::lift_L(xb)) -
           mul_left(wedge(gyz.d(), lxo), lu) -
           mul_left(wedge(gyz.d(), omega), Derivation::lift_L(nxu)) +
           mul_left(wedge(gxz.d(), lyo), lu) +
           mul_left(wedge(gxz.d(), omega), Derivation::lift_L(nyu));
  }
  if (gx == Gen::L && gy == Gen::L && gz == Gen::I) {
    VectorField r = g.curvature(xb, yb, zb);
    return Derivation::lift_i(r) - mul_left(wedge(lxo, gzu), Derivation::lift_L(yb)) -
           mul_left(wedge(omega, c.gf(zb, nxu)), Derivation::lift_L(yb)) +
           mul_left(wedge(lyo, gzu), Derivation::lift_L(xb)) +
           mul_left(wedge(omega, c.gf(zb, nyu)), Derivation::lift_L(xb)) -
           mul_left(wedge(gyz, lxo), lu) -
           mul_left(wedge(gyz, omega), Derivation::lift_L(nxu)) +
           mul_left(wedge(gxz, lyo), lu) + mul_left(wedge(gxz, omega), Derivation::lift_L(nyu));
  }
  if (gx == Gen::L && gy == Gen::I && gz == Gen::L) {
    VectorField r = g.curvature(xb, yb, zb);
    return Derivation::lift_i(r) + mul_left(wedge(lxo, gzu.d()), Derivation::lift_i(yb)) +
           mul_left(wedge(omega, c.dgf(zb, nxu)), Derivation::lift_i(yb)) -
           mul_left(wedge(iyo, gzu.d()), Derivation::lift_L(xb)) +
           mul_left(wedge(omega, c.gf(zb, nyu)), Derivation::lift_L(xb)) -
           mul_left(wedge(gyz, lxo), lu) -
           mul_left(wedge(gyz, omega), Derivation::lift_L(nxu)) -
           mul_left(wedge(gxz.d(), iyo), lu) +
           mul_left(wedge(gxz.d(), omega), Derivation::lift_i(nyu));
  }
  if (gx == Gen::L && gy == Gen::I && gz == Gen::I) {
    return mul_left(wedge(lxo, gzu), Derivation::lift_i(yb)) +
           mul_left(wedge(omega, c.gf(zb, nxu)), Derivation::lift_i(yb)) +
           mul_left(wedge(iyo, gzu), Derivation::lift_L(xb)) +
           mul_left(wedge(gxz, iyo), lu) - mul_left(wedge(gxz, omega), Derivation::lift_i(nyu));
  }
  if (gx == Gen::I && gy == Gen::I && gz == Gen::L) {
    return mul_left(wedge(ixo, gzu.d()), Derivation::lift_i(yb)) -
           mul_left(wedge(omega, c.gf(zb, nxu)), Derivation::lift_i(yb)) +
           mul_left(wedge(iyo, gzu.d()), Derivation::lift_i(xb)) -
           mul_left(wedge(omega, c.gf(zb, nyu)), Derivation::lift_i(xb)) -
           mul_left(wedge(gyz, ixo), lu) + mul_left(wedge(gyz, omega), Derivation::lift_i(nxu)) -
           mul_left(wedge(gxz, iyo), lu) + mul_left(wedge(gxz, omega), Derivation::lift_i(nyu));
  }
  // (i, i, i)
  return mul_left(wedge(ixo, gzu), Derivation::lift_i(yb)) +
         mul_left(wedge(iyo, gzu), Derivation::lift_i(xb));
}

}  // namespace closed_form

std::pair<Form, Form> einstein_residuals(const Connection& conn, const GradedMetric& gm,
                                         const OrthoFrame& frame, const VectorField& u,
                                         const Form& omega, const Derivation& x,
                                         const Derivation& y) {
  Form ric = ricci(conn, gm, frame, x, y);
  Form lu_omega = omega.lie(u);
  Form gxy = gm.pair(x, y);
  return {ric + wedge(gxy, lu_omega), ric + wedge(lu_omega, gxy)};
}

}  // namespace gconn
