#include "gconn/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gconn {

Derivation Derivation::generator(int dim, Gen g, int index) {
  Derivation w(dim);
  w.add_term(Form::scalar(dim, 1.0), g, index);
  return w;
}

Derivation Derivation::lift_L(const VectorField& v) {
  Derivation w(v.dim());
  for (int j = 1; j <= v.dim(); ++j) {
    w.add_term(Form::scalar(v.dim(), v.comp(j)), Gen::L, j);
    w.add_term(Form::scalar(v.dim(), v.comp(j)).d(), Gen::I, j);
  }
  return w;
}

Derivation Derivation::lift_i(const VectorField& v) {
  Derivation w(v.dim());
  for (int j = 1; j <= v.dim(); ++j)
    w.add_term(Form::scalar(v.dim(), v.comp(j)), Gen::I, j);
  return w;
}

void Derivation::add_term(Form coeff, Gen g, int index) {
  if (index < 1 || index > dim_) throw DimensionMismatch("generator index out of range");
  if (coeff.dim() != dim_) throw DimensionMismatch("coefficient dimension differs");
  if (coeff.is_structurally_zero()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->gen == g && it->index == index) {
      it->coeff = it->coeff + coeff;
      if (it->coeff.is_structurally_zero()) terms_.erase(it);
      return;
    }
  }
  terms_.push_back(DerTerm{std::move(coeff), g, index});
  std::sort(terms_.begin(), terms_.end(), [](const DerTerm& a, const DerTerm& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.index < b.index;
  });
}

Form Derivation::apply(const Form& a) const {
  if (a.dim() != dim_) throw DimensionMismatch("form dimension differs from derivation");
  Form out(dim_);
  for (const auto& t : terms_) {
    Form action = t.gen == Gen::L ? a.dcoord(t.index)
                                  : a.interior(VectorField::coordinate(dim_, t.index));
    out = out + wedge(t.coeff, action);
  }
  return out;
}

Derivation Derivation::operator+(const Derivation& o) const {
  if (dim_ != o.dim_) throw DimensionMismatch("derivation dimensions differ");
  Derivation r = *this;
  for (const auto& t : o.terms_) r.add_term(t.coeff, t.gen, t.index);
  return r;
}

Derivation Derivation::operator-(const Derivation& o) const {
  if (dim_ != o.dim_) throw DimensionMismatch("derivation dimensions differ");
  Derivation r = *this;
  for (const auto& t : o.terms_) r.add_term(-t.coeff, t.gen, t.index);
  return r;
}

Derivation Derivation::operator-() const { return scaled(-1.0); }

Derivation Derivation::scaled(double c) const {
  Derivation r(dim_);
  for (const auto& t : terms_)
    r.add_term(t.coeff.mul_scalar(ScalarExpr::constant(c)), t.gen, t.index);
  return r;
}

bool Derivation::is_homogeneous() const {
  int p = -1;
  for (const auto& t : terms_) {
    if (!t.coeff.is_homogeneous_parity()) return false;
    int q = (t.coeff.parity() + gen_parity(t.gen)) % 2;
    if (p < 0) p = q;
    else if (p != q) return false;
  }
  return true;
}

int Derivation::parity() const {
  if (terms_.empty()) return 0;
  if (!is_homogeneous()) throw NonHomogeneous("derivation mixes parities");
  return (terms_.front().coeff.parity() + gen_parity(terms_.front().gen)) % 2;
}

Derivation Derivation::even_part() const {
  Derivation r(dim_);
  for (const auto& t : terms_) {
    Form keep = gen_parity(t.gen) == 0 ? t.coeff.even_part() : t.coeff.odd_part();
    r.add_term(keep, t.gen, t.index);
  }
  return r;
}

Derivation Derivation::odd_part() const {
  Derivation r(dim_);
  for (const auto& t : terms_) {
    Form keep = gen_parity(t.gen) == 0 ? t.coeff.odd_part() : t.coeff.even_part();
    r.add_term(keep, t.gen, t.index);
  }
  return r;
}

double Derivation::max_abs(EvalContext& ctx) const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.coeff.max_abs(ctx));
  return m;
}

double Derivation::max_abs(const Point& p) const {
  EvalContext ctx(p);
  return max_abs(ctx);
}

std::string Derivation::str(const std::vector<std::string>& coords) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.str(coords) << ") " << (t.gen == Gen::L ? "L" : "i") << t.index;
  }
  return os.str();
}

Derivation mul_left(const Form& a, const Derivation& w) {
  Derivation r(w.dim());
  for (const auto& t : w.terms()) r.add_term(wedge(a, t.coeff), t.gen, t.index);
  return r;
}

Derivation mul_right(const Derivation& w, const Form& a) {
  Derivation r(w.dim());
  for (const Form& ah : {a.even_part(), a.odd_part()}) {
    if (ah.is_structurally_zero()) continue;
    int pa = ah.parity();
    for (const auto& t : w.terms()) {
      for (const Form& ch : {t.coeff.even_part(), t.coeff.odd_part()}) {
        if (ch.is_structurally_zero()) continue;
        int pt = (ch.parity() + gen_parity(t.gen)) % 2;
        double sign = (pa * pt) % 2 == 1 ? -1.0 : 1.0;
        r.add_term(wedge(ah, ch).mul_scalar(ScalarExpr::constant(sign)), t.gen, t.index);
      }
    }
  }
  return r;
}

namespace {

// Reconstructs a derivation from its action on {x_j} and {dx_j}: the L_j
// coefficient is the action on x_j, the i_j coefficient the action on dx_j.
template <typename Action>
Derivation reconstruct(int dim, Action&& act) {
  Derivation r(dim);
  for (int j = 1; j <= dim; ++j) {
    r.add_term(act(Form::coordinate(dim, j)), Gen::L, j);
    r.add_term(act(Form::dx(dim, j)), Gen::I, j);
  }
  return r;
}

}  // namespace

Derivation commutator(const Derivation& w1, const Derivation& w2) {
  if (w1.dim() != w2.dim()) throw DimensionMismatch("derivation dimensions differ");
  int dim = w1.dim();
  Derivation out(dim);
  for (const Derivation& a : {w1.even_part(), w1.odd_part()}) {
    if (a.is_structurally_zero()) continue;
    for (const Derivation& b : {w2.even_part(), w2.odd_part()}) {
      if (b.is_structurally_zero()) continue;
      double sign = (a.parity() * b.parity()) % 2 == 1 ? -1.0 : 1.0;
      auto act = [&](const Form& x) {
        return a.apply(b.apply(x)) - b.apply(a.apply(x)).mul_scalar(ScalarExpr::constant(sign));
      };
      out = out + reconstruct(dim, act);
    }
  }
  return out;
}

}  // namespace gconn
