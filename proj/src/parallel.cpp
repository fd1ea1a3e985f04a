#include "gconn/parallel.hpp"

namespace gconn {

namespace {
double sgn(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

int parity_of(const Derivation& w, const char* who) {
  if (!w.is_homogeneous()) throw NonHomogeneous(std::string(who) + ": mixed-parity argument");
  return w.parity();
}
}  // namespace

ParallelFrame::ParallelFrame(std::vector<VectorField> rows) : basis_(std::move(rows)) {
  int m = dim();
  structure_.resize(static_cast<std::size_t>(m) * m * m);
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= m; ++l) {
      VectorField br = bracket(basis_.row(k), basis_.row(l));
      for (int mu = 1; mu <= m; ++mu) {
        ScalarExpr acc;
        for (int j = 1; j <= m; ++j) acc = acc + br.comp(j) * basis_.inverse_entry(j, mu);
        structure_[((static_cast<std::size_t>(mu - 1) * m) + (k - 1)) * m + (l - 1)] = acc;
      }
    }
  }
}

std::vector<Derivation> ParallelFrame::generators() const {
  std::vector<Derivation> out;
  for (Gen g : {Gen::L, Gen::I})
    for (int k = 1; k <= dim(); ++k) out.push_back(gen(g, k));
  return out;
}

const ScalarExpr& ParallelFrame::structure(int mu, int k, int l) const {
  return structure_[((static_cast<std::size_t>(mu - 1) * dim()) + (k - 1)) * dim() + (l - 1)];
}

VectorField ParallelFrame::bracket_field(int k, int l) const {
  return bracket(basis_.row(k), basis_.row(l));
}

bool ParallelFrame::constant_structure_at(const std::vector<Point>& pts, double tol) const {
  for (int mu = 1; mu <= dim(); ++mu)
    for (int k = 1; k <= dim(); ++k)
      for (int l = 1; l <= dim(); ++l)
        for (int j = 1; j <= dim(); ++j) {
          ScalarExpr d = structure(mu, k, l).diff(j);
          for (const auto& p : pts)
            if (std::abs(d.eval(p)) > tol) return false;
        }
  return true;
}

void ParallelFrame::require_constant_structure(const std::vector<Point>& pts, double tol) const {
  if (!constant_structure_at(pts, tol))
    throw NonConstantStructure("frame structure functions are not constant");
}

// --- canonical / dual / blends -------------------------------------------------

Derivation CanonicalConnection::eval(const Derivation& x, const Derivation& y) const {
  auto [omega, omega_i] = frame_->basis().expand(y);
  int m = dim();
  Derivation out(m);
  for (int k = 1; k <= m; ++k) {
    out = out + mul_left(x.apply(omega[static_cast<std::size_t>(k - 1)]), frame_->gen(Gen::L, k));
    out = out +
          mul_left(x.apply(omega_i[static_cast<std::size_t>(k - 1)]), frame_->gen(Gen::I, k));
  }
  return out;
}

Derivation DualConnection::eval(const Derivation& x, const Derivation& y) const {
  Derivation out = commutator(x, y);
  for (const Derivation& xp : {x.even_part(), x.odd_part()}) {
    if (xp.is_structurally_zero()) continue;
    for (const Derivation& yq : {y.even_part(), y.odd_part()}) {
      if (yq.is_structurally_zero()) continue;
      out = out + canonical_->eval(yq, xp).scaled(sgn(xp.parity() * yq.parity()));
    }
  }
  return out;
}

Derivation LambdaConnection::eval(const Derivation& x, const Derivation& y) const {
  return canonical_->eval(x, y).scaled(1.0 - lambda_) + dual_.eval(x, y).scaled(lambda_);
}

OmegaConnection::OmegaConnection(std::shared_ptr<const CanonicalConnection> canonical, Form omega)
    : canonical_(std::move(canonical)), dual_(canonical_), omega_(std::move(omega)) {
  if (!omega_.is_structurally_zero() &&
      (!omega_.is_homogeneous_parity() || omega_.parity() != 0))
    throw ParityViolation("omega blend requires an even form");
}

Derivation OmegaConnection::eval(const Derivation& x, const Derivation& y) const {
  Form one_minus = Form::scalar(dim(), 1.0) - omega_;
  return mul_left(one_minus, canonical_->eval(x, y)) + mul_left(omega_, dual_.eval(x, y));
}

// --- Schouten / Vranceanu -------------------------------------------------------

Derivation SchoutenConnection::eval(const Derivation& x, const Derivation& y) const {
  Derivation yd = split_.project(y, true);
  Derivation yp = split_.project(y, false);
  return split_.project(base_->eval(x, yd), true) + split_.project(base_->eval(x, yp), false);
}

Derivation VranceanuConnection::eval(const Derivation& x, const Derivation& y) const {
  Derivation xd = split_.project(x, true);
  Derivation xp = split_.project(x, false);
  Derivation yd = split_.project(y, true);
  Derivation yp = split_.project(y, false);
  return split_.project(base_->eval(xd, yd), true) + split_.project(base_->eval(xp, yp), false) +
         split_.project(commutator(xp, yd), true) + split_.project(commutator(xd, yp), false);
}

// --- closed forms ----------------------------------------------------------------

namespace closed_form {

Derivation canonical_torsion(const ParallelFrame& frame, Gen gx, int j, Gen gy, int l) {
  VectorField br = frame.bracket_field(j, l);
  if (gx == Gen::L && gy == Gen::L) return -Derivation::lift_L(br);
  if (gx == Gen::L && gy == Gen::I) return -Derivation::lift_i(br);
  if (gx == Gen::I && gy == Gen::L) return Derivation::lift_i(frame.bracket_field(l, j));
  return Derivation(frame.dim());
}

Derivation lambda_table(const ParallelFrame& frame, double lambda, Gen gx, int j, Gen gy,
                        int l) {
  VectorField br = frame.bracket_field(j, l);
  if (gx == Gen::I && gy == Gen::I) return Derivation(frame.dim());
  Derivation lifted =
      (gx == Gen::L && gy == Gen::L) ? Derivation::lift_L(br) : Derivation::lift_i(br);
  return lifted.scaled(lambda);
}

namespace {

// sum_mu f_mu E_mu as a vector field
VectorField combine(const ParallelFrame& frame, const std::vector<ScalarExpr>& f) {
  VectorField v(frame.dim());
  for (int mu = 1; mu <= frame.dim(); ++mu)
    v = v + frame.row(mu).scaled(f[static_cast<std::size_t>(mu - 1)]);
  return v;
}

// directional derivative E_k(f)
ScalarExpr dir(const ParallelFrame& frame, int k, const ScalarExpr& f) {
  ScalarExpr acc;
  for (int j = 1; j <= frame.dim(); ++j) acc = acc + frame.row(k).comp(j) * f.diff(j);
  return acc;
}

}  // namespace

Derivation lambda_curvature(const ParallelFrame& frame, double lambda, Gen gx, int j, Gen gy,
                            int k, Gen gz, int l) {
  int m = frame.dim();
  if (gx == Gen::I && gy == Gen::L)
    return -lambda_curvature(frame, lambda, gy, k, gx, j, gz, l);
  if (gx == Gen::I && gy == Gen::I) return Derivation(m);
  if (gx == Gen::L && gy == Gen::I && gz == Gen::I) return Derivation(m);

  VectorField jkl = bracket(frame.bracket_field(j, k), frame.row(l));
  std::vector<ScalarExpr> mixed(static_cast<std::size_t>(m));
  std::vector<ScalarExpr> last(static_cast<std::size_t>(m));
  for (int mu = 1; mu <= m; ++mu) {
    mixed[static_cast<std::size_t>(mu - 1)] =
        dir(frame, j, frame.structure(mu, k, l)) - dir(frame, k, frame.structure(mu, j, l));
    last[static_cast<std::size_t>(mu - 1)] = dir(frame, l, frame.structure(mu, j, k));
  }
  VectorField vmixed = combine(frame, mixed);
  VectorField vlast = combine(frame, last);

  double a = lambda * lambda - lambda;
  bool l_lift = gx == Gen::L && gy == Gen::L && gz == Gen::L;
  auto lift = [&](const VectorField& v) {
    return l_lift ? Derivation::lift_L(v) : Derivation::lift_i(v);
  };
  return lift(jkl).scaled(a) + lift(vmixed).scaled(-a) + lift(vlast).scaled(-lambda);
}

Derivation omega_curvature(const ParallelFrame& frame, const Form& omega, Gen gx, int j, Gen gy,
                           int k, Gen gz, int l) {
  int m = frame.dim();
  if (gx == Gen::I && gy == Gen::L)
    return -omega_curvature(frame, omega, gy, k, gx, j, gz, l);

  Form lj_o = omega.lie(frame.row(j));
  Form lk_o = omega.lie(frame.row(k));
  Form ij_o = omega.interior(frame.row(j));
  Form ik_o = omega.interior(frame.row(k));
  Form osq_minus = wedge(omega, omega) - omega;

  VectorField kl = frame.bracket_field(k, l);
  VectorField jl = frame.bracket_field(j, l);
  VectorField jkl = bracket(frame.bracket_field(j, k), frame.row(l));

  auto liftL = [](const VectorField& v) { return Derivation::lift_L(v); };
  auto lifti = [](const VectorField& v) { return Derivation::lift_i(v); };

  if (gx == Gen::L && gy == Gen::L && gz == Gen::L) {
    return mul_left(lj_o, liftL(kl)) - mul_left(lk_o, liftL(jl)) +
           mul_left(osq_minus, liftL(jkl));
  }
  if (gx == Gen::L && gy == Gen::L && gz == Gen::I) {
    return mul_left(lj_o, lifti(kl)) - mul_left(lk_o, lifti(jl)) +
           mul_left(osq_minus, lifti(jkl));
  }
  if (gx == Gen::L && gy == Gen::I && gz == Gen::L) {
    return mul_left(lj_o, lifti(kl)) - mul_left(ik_o, liftL(jl)) +
           mul_left(osq_minus, lifti(jkl));
  }
  if (gx == Gen::L && gy == Gen::I && gz == Gen::I) {
    return -mul_left(ik_o, lifti(jl));
  }
  if (gx == Gen::I && gy == Gen::I && gz == Gen::L) {
    return mul_left(ij_o, lifti(kl)) + mul_left(ik_o, lifti(jl));
  }
  return Derivation(m);
}

Form omega_ricci(const ParallelFrame& frame, const Form& omega, Gen gx, int j, Gen gy, int l) {
  if (gx == Gen::L && gy == Gen::L)
    return Derivation::lift_L(frame.bracket_field(j, l)).apply(omega);
  if (gx == Gen::I && gy == Gen::I) return Form(frame.dim());
  return Derivation::lift_i(frame.bracket_field(j, l)).apply(omega);
}

}  // namespace closed_form

Derivation lie_full_conn(const Connection& conn, const Derivation& x, const Derivation& y,
                         const Derivation& z) {
  int px = parity_of(x, "lie_full_conn");
  int py = parity_of(y, "lie_full_conn");
  return commutator(x, conn.eval(y, z)) - conn.eval(commutator(x, y), z) -
         conn.eval(y, commutator(x, z)).scaled(sgn(px * py));
}

Derivation dual_lie_residual(const CanonicalConnection& canonical, const DualConnection& dual,
                             const Derivation& x, const Derivation& y, const Derivation& z) {
  int py = parity_of(y, "dual_lie");
  int pz = parity_of(z, "dual_lie");
  return lie_full_conn(dual, x, y, z) - lie_full_conn(canonical, x, z, y).scaled(sgn(py * pz));
}

Derivation dual_lie_flat_residual(const CanonicalConnection& canonical,
                                  const DualConnection& dual, const Derivation& x,
                                  const Derivation& y, const Derivation& z,
                                  const std::vector<Point>& pts) {
  int px = parity_of(x, "dual_lie_flat");
  int py = parity_of(y, "dual_lie_flat");
  int pz = parity_of(z, "dual_lie_flat");
  for (const auto& gen : canonical.frame().generators()) {
    Derivation cx = canonical.eval(gen, x);
    for (const auto& p : pts)
      if (cx.max_abs(p) > 1e-10)
        throw PreconditionViolated("operator is not parallel for the canonical connection");
  }
  Derivation rhs = -torsion(canonical, x, canonical.eval(z, y)).scaled(sgn(py * pz)) +
                   canonical.eval(z, torsion(canonical, x, y)).scaled(sgn((px + py) * pz));
  return lie_full_conn(dual, x, y, z) - rhs;
}

}  // namespace gconn
