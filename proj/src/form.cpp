#include "gconn/form.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>

namespace gconn {

// --- VectorField -------------------------------------------------------------

VectorField VectorField::coordinate(int dim, int j) {
  VectorField v(dim);
  v.comp(j) = ScalarExpr::constant(1.0);
  return v;
}

VectorField VectorField::operator+(const VectorField& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("vector field dimensions differ");
  VectorField r(dim());
  for (int j = 1; j <= dim(); ++j) r.comp(j) = comp(j) + o.comp(j);
  return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("vector field dimensions differ");
  VectorField r(dim());
  for (int j = 1; j <= dim(); ++j) r.comp(j) = comp(j) - o.comp(j);
  return r;
}

VectorField VectorField::scaled(const ScalarExpr& f) const {
  VectorField r(dim());
  for (int j = 1; j <= dim(); ++j) r.comp(j) = f * comp(j);
  return r;
}

VectorField bracket(const VectorField& v, const VectorField& w) {
  if (v.dim() != w.dim()) throw DimensionMismatch("vector field dimensions differ");
  int m = v.dim();
  VectorField r(m);
  for (int k = 1; k <= m; ++k) {
    ScalarExpr acc;
    for (int j = 1; j <= m; ++j) {
      acc = acc + v.comp(j) * w.comp(k).diff(j) - w.comp(j) * v.comp(k).diff(j);
    }
    r.comp(k) = acc;
  }
  return r;
}

bool VectorField::is_structurally_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

std::string VectorField::str(const std::vector<std::string>& coords) const {
  std::ostringstream os;
  os << "[";
  for (int j = 1; j <= dim(); ++j) {
    if (j > 1) os << ", ";
    os << comp(j).str(coords);
  }
  os << "]";
  return os.str();
}

// --- Form ---------------------------------------------------------------------

void Form::add_term(std::uint32_t mask, const ScalarExpr& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, coeff);
  } else {
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form Form::scalar(int dim, ScalarExpr f) {
  Form r(dim);
  r.add_term(0, f);
  return r;
}

Form Form::dx(int dim, int j) {
  if (j < 1 || j > dim) throw DimensionMismatch("dx index out of range");
  Form r(dim);
  r.add_term(1u << (j - 1), ScalarExpr::constant(1.0));
  return r;
}

Form Form::coordinate(int dim, int j) {
  if (j < 1 || j > dim) throw DimensionMismatch("coordinate index out of range");
  return scalar(dim, ScalarExpr::coord(j));
}

Form Form::term(int dim, std::uint32_t mask, ScalarExpr coeff) {
  Form r(dim);
  if (mask >= (1u << dim)) throw DimensionMismatch("multi-index out of range");
  r.add_term(mask, std::move(coeff));
  return r;
}

Form Form::operator+(const Form& o) const {
  if (dim_ != o.dim_) throw DimensionMismatch("form dimensions differ");
  Form r = *this;
  for (const auto& [mask, c] : o.terms_) r.add_term(mask, c);
  return r;
}

Form Form::operator-(const Form& o) const {
  if (dim_ != o.dim_) throw DimensionMismatch("form dimensions differ");
  Form r = *this;
  for (const auto& [mask, c] : o.terms_) r.add_term(mask, ScalarExpr::constant(-1.0) * c);
  return r;
}

Form Form::operator-() const {
  Form r(dim_);
  for (const auto& [mask, c] : terms_) r.add_term(mask, ScalarExpr::constant(-1.0) * c);
  return r;
}

int Form::wedge_sign(std::uint32_t lhs, std::uint32_t rhs) {
  if ((lhs & rhs) != 0) return 0;
  // Count transpositions moving each rhs index past the lhs indices above it.
  int inversions = 0;
  for (std::uint32_t r = rhs; r != 0; r &= r - 1) {
    int b = std::countr_zero(r);
    inversions += std::popcount(lhs >> (b + 1));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("form dimensions differ");
  Form r(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      int s = Form::wedge_sign(ma, mb);
      if (s == 0) continue;
      r.add_term(ma | mb, ScalarExpr::constant(static_cast<double>(s)) * ca * cb);
    }
  }
  return r;
}

Form Form::mul_scalar(const ScalarExpr& f) const {
  Form r(dim_);
  for (const auto& [mask, c] : terms_) r.add_term(mask, f * c);
  return r;
}

Form Form::d() const {
  Form r(dim_);
  for (const auto& [mask, c] : terms_) {
    for (int j = 1; j <= dim_; ++j) {
      std::uint32_t jm = 1u << (j - 1);
      int s = wedge_sign(jm, mask);
      if (s == 0) continue;
      r.add_term(jm | mask, ScalarExpr::constant(static_cast<double>(s)) * c.diff(j));
    }
  }
  return r;
}

Form Form::interior(const VectorField& v) const {
  if (v.dim() != dim_) throw DimensionMismatch("vector field dimension differs from form");
  Form r(dim_);
  for (const auto& [mask, c] : terms_) {
    int pos = 0;  // 1-based position of the index within the increasing multi-index
    for (std::uint32_t mm = mask; mm != 0; mm &= mm - 1) {
      int b = std::countr_zero(mm);
      ++pos;
      double sign = (pos % 2 == 1) ? 1.0 : -1.0;
      r.add_term(mask & ~(1u << b),
                 ScalarExpr::constant(sign) * v.comp(b + 1) * c);
    }
  }
  return r;
}

Form Form::lie(const VectorField& v) const { return interior(v).d() + d().interior(v); }

Form Form::dcoord(int j) const {
  Form r(dim_);
  for (const auto& [mask, c] : terms_) r.add_term(mask, c.diff(j));
  return r;
}

bool Form::is_homogeneous_parity() const {
  int p = -1;
  for (const auto& [mask, c] : terms_) {
    int q = std::popcount(mask) % 2;
    if (p < 0) p = q;
    else if (p != q) return false;
  }
  return true;
}

int Form::parity() const {
  if (terms_.empty()) return 0;
  if (!is_homogeneous_parity()) throw NonHomogeneous("form mixes parities");
  return std::popcount(terms_.begin()->first) % 2;
}

Form Form::even_part() const {
  Form r(dim_);
  for (const auto& [mask, c] : terms_)
    if (std::popcount(mask) % 2 == 0) r.add_term(mask, c);
  return r;
}

Form Form::odd_part() const {
  Form r(dim_);
  for (const auto& [mask, c] : terms_)
    if (std::popcount(mask) % 2 == 1) r.add_term(mask, c);
  return r;
}

std::vector<Form> Form::homogeneous_components() const {
  std::map<int, Form> by_degree;
  for (const auto& [mask, c] : terms_) {
    int deg = std::popcount(mask);
    auto it = by_degree.find(deg);
    if (it == by_degree.end()) it = by_degree.emplace(deg, Form(dim_)).first;
    it->second.add_term(mask, c);
  }
  std::vector<Form> out;
  for (auto& [deg, f] : by_degree) out.push_back(std::move(f));
  return out;
}

double Form::eval_coeff(std::uint32_t mask, EvalContext& ctx) const {
  auto it = terms_.find(mask);
  if (it == terms_.end()) return 0.0;
  return it->second.eval(ctx);
}

double Form::max_abs(EvalContext& ctx) const {
  double m = 0.0;
  for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c.eval(ctx)));
  return m;
}

double Form::max_abs(const Point& p) const {
  EvalContext ctx(p);
  return max_abs(ctx);
}

std::string Form::str(const std::vector<std::string>& coords) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string coeff = c.str(coords);
    if (coeff.find(' ') != std::string::npos || coeff.find('+') != std::string::npos ||
        coeff.find('-') != std::string::npos)
      coeff = "(" + coeff + ")";
    os << coeff;
    for (std::uint32_t mm = mask; mm != 0; mm &= mm - 1) {
      int b = std::countr_zero(mm);
      os << (mm == mask ? " * " : "^") << "dx" << (b + 1);
    }
  }
  return os.str();
}

// --- literal parsing ---------------------------------------------------------

namespace {

// Splits at top-level '+'/'-' (paren depth 0); keeps the sign with each piece.
std::vector<std::pair<int, std::string>> split_sum(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  int depth = 0;
  int sign = 1;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      if (cur.find_first_not_of(" \t") == std::string::npos) {
        // Leading sign of a term.
        if (c == '-') sign = -sign;
        continue;
      }
      std::size_t j = cur.find_last_not_of(" \t");
      char prev = cur[j];
      // A sign directly after an operator or an exponent marker stays put.
      bool glued = prev == '*' || prev == '/' || prev == '^' || prev == '(' ||
                   ((prev == 'e' || prev == 'E') && j > 0 &&
                    std::isdigit(static_cast<unsigned char>(cur[j - 1])));
      if (!glued) {
        out.emplace_back(sign, cur);
        sign = (c == '-') ? -1 : 1;
        cur.clear();
        continue;
      }
    }
    cur += c;
  }
  out.emplace_back(sign, cur);
  return out;
}

}  // namespace

Form parse_form(const std::string& text, const std::vector<std::string>& coords) {
  int dim = static_cast<int>(coords.size());
  Form result(dim);
  for (auto& [sign, piece] : split_sum(text)) {
    // Separate a trailing wedge block of dx<i> factors from the scalar part.
    std::vector<int> indices;
    std::string scalar = piece;
    for (;;) {
      std::size_t end = scalar.find_last_not_of(" \t");
      if (end == std::string::npos) break;
      std::size_t start = scalar.find_last_of("*^", end);
      std::string tail = scalar.substr(start == std::string::npos ? 0 : start + 1,
                                       (start == std::string::npos ? end + 1 : end - start));
      // trim
      std::size_t a = tail.find_first_not_of(" \t");
      std::size_t b = tail.find_last_not_of(" \t");
      if (a == std::string::npos) break;
      tail = tail.substr(a, b - a + 1);
      if (tail.size() > 2 && tail.rfind("dx", 0) == 0 &&
          tail.find_first_not_of("0123456789", 2) == std::string::npos) {
        indices.insert(indices.begin(), std::stoi(tail.substr(2)));
        scalar = start == std::string::npos ? "" : scalar.substr(0, start);
      } else {
        break;
      }
    }
    ScalarExpr coeff = ScalarExpr::constant(1.0);
    std::size_t nonws = scalar.find_first_not_of(" \t");
    if (nonws != std::string::npos) coeff = parse_expr(scalar, coords);
    if (sign < 0) coeff = ScalarExpr::constant(-1.0) * coeff;

    Form term = Form::scalar(dim, coeff);
    for (int idx : indices) {
      if (idx < 1 || idx > dim)
        throw ParseError("dx index out of range in form literal", 0, "dx1..dx" + std::to_string(dim));
      term = wedge(term, Form::dx(dim, idx));
    }
    result = result + term;
  }
  return result;
}

VectorField parse_vector(const std::vector<std::string>& comps,
                         const std::vector<std::string>& coords) {
  if (comps.size() != coords.size())
    throw DimensionMismatch("vector component count differs from chart dimension");
  VectorField v(static_cast<int>(coords.size()));
  for (std::size_t j = 0; j < comps.size(); ++j)
    v.comp(static_cast<int>(j) + 1) = parse_expr(comps[j], coords);
  return v;
}

}  // namespace gconn
