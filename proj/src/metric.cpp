#include "gconn/metric.hpp"

#include <cmath>

namespace gconn {

namespace {

ScalarExpr minor_det(const std::vector<std::vector<ScalarExpr>>& a, std::vector<int> rows,
                     std::vector<int> cols) {
  std::size_t n = rows.size();
  if (n == 1) return a[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[0])];
  ScalarExpr acc;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != k) sub_cols.push_back(cols[c]);
    ScalarExpr term =
        a[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[k])] *
        minor_det(a, sub_rows, sub_cols);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

ScalarExpr det_expr(const std::vector<std::vector<ScalarExpr>>& a) {
  std::vector<int> all;
  for (std::size_t i = 0; i < a.size(); ++i) all.push_back(static_cast<int>(i));
  return minor_det(a, all, all);
}

}  // namespace

std::vector<std::vector<ScalarExpr>> invert_matrix(
    const std::vector<std::vector<ScalarExpr>>& a, ScalarExpr* det_out) {
  std::size_t n = a.size();
  ScalarExpr det = det_expr(a);
  if (det_out) *det_out = det;
  std::vector<std::vector<ScalarExpr>> inv(n, std::vector<ScalarExpr>(n));
  if (n == 1) {
    inv[0][0] = ScalarExpr::constant(1.0) / det;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (std::size_t r = 0; r < n; ++r)
        if (r != j) rows.push_back(static_cast<int>(r));
      for (std::size_t c = 0; c < n; ++c)
        if (c != i) cols.push_back(static_cast<int>(c));
      ScalarExpr cof = minor_det(a, rows, cols);
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      inv[i][j] = ScalarExpr::constant(sign) * cof / det;
    }
  }
  return inv;
}

MetricG::MetricG(int dim, std::vector<std::vector<ScalarExpr>> entries) : dim_(dim) {
  if (static_cast<int>(entries.size()) != dim)
    throw DimensionMismatch("metric row count differs from dimension");
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != dim)
      throw DimensionMismatch("metric column count differs from dimension");

  g_.resize(static_cast<std::size_t>(dim) * dim);
  for (int i = 1; i <= dim; ++i)
    for (int j = 1; j <= dim; ++j)
      g_[idx(i, j)] = entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j)
      if (!expr_is_zero_expanded(entry(i, j) - entry(j, i)))
        throw ValidationError("metric", "metric matrix is not symmetric");

  auto inv = invert_matrix(entries, &det_);
  ginv_.resize(g_.size());
  for (int i = 1; i <= dim; ++i)
    for (int j = 1; j <= dim; ++j)
      ginv_[idx(i, j)] = inv[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];

  // Gamma^k_{ij} = 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})
  christoffel_.resize(g_.size() * static_cast<std::size_t>(dim));
  auto cidx = [&](int k, int i, int j) {
    return ((static_cast<std::size_t>(k - 1) * dim_) + (i - 1)) * dim_ + (j - 1);
  };
  for (int k = 1; k <= dim; ++k) {
    for (int i = 1; i <= dim; ++i) {
      for (int j = 1; j <= dim; ++j) {
        ScalarExpr acc;
        for (int l = 1; l <= dim; ++l) {
          acc = acc + inverse_entry(k, l) *
                          (entry(j, l).diff(i) + entry(i, l).diff(j) - entry(i, j).diff(l));
        }
        christoffel_[cidx(k, i, j)] = ScalarExpr::constant(0.5) * acc;
      }
    }
  }

  // R^g(d_i,d_j)d_k = sum_l comp^l d_l,
  // comp^l = d_i Gamma^l_{jk} - d_j Gamma^l_{ik} + Gamma^l_{im}Gamma^m_{jk}
  //          - Gamma^l_{jm}Gamma^m_{ik}
  curvature_.resize(g_.size() * g_.size());
  auto ridx = [&](int i, int j, int k, int l) {
    return (((static_cast<std::size_t>(i - 1) * dim_ + (j - 1)) * dim_ + (k - 1)) * dim_) +
           (l - 1);
  };
  for (int i = 1; i <= dim; ++i) {
    for (int j = 1; j <= dim; ++j) {
      for (int k = 1; k <= dim; ++k) {
        for (int l = 1; l <= dim; ++l) {
          ScalarExpr acc = christoffel(l, j, k).diff(i) - christoffel(l, i, k).diff(j);
          for (int mu = 1; mu <= dim; ++mu) {
            acc = acc + christoffel(l, i, mu) * christoffel(mu, j, k) -
                  christoffel(l, j, mu) * christoffel(mu, i, k);
          }
          curvature_[ridx(i, j, k, l)] = acc;
        }
      }
    }
  }
}

const ScalarExpr& MetricG::christoffel(int k, int i, int j) const {
  return christoffel_[((static_cast<std::size_t>(k - 1) * dim_) + (i - 1)) * dim_ + (j - 1)];
}

const ScalarExpr& MetricG::curvature_comp(int i, int j, int k, int l) const {
  return curvature_[(((static_cast<std::size_t>(i - 1) * dim_ + (j - 1)) * dim_ + (k - 1)) *
                     dim_) +
                    (l - 1)];
}

ScalarExpr MetricG::g_scalar(const VectorField& v, const VectorField& w) const {
  ScalarExpr acc;
  for (int i = 1; i <= dim_; ++i)
    for (int j = 1; j <= dim_; ++j) acc = acc + entry(i, j) * v.comp(i) * w.comp(j);
  return acc;
}

VectorField MetricG::nabla(const VectorField& v, const VectorField& w) const {
  VectorField r(dim_);
  for (int k = 1; k <= dim_; ++k) {
    ScalarExpr acc;
    for (int i = 1; i <= dim_; ++i) {
      acc = acc + v.comp(i) * w.comp(k).diff(i);
      for (int j = 1; j <= dim_; ++j) acc = acc + v.comp(i) * w.comp(j) * christoffel(k, i, j);
    }
    r.comp(k) = acc;
  }
  return r;
}

VectorField MetricG::curvature(const VectorField& u, const VectorField& v,
                               const VectorField& w) const {
  VectorField r(dim_);
  for (int l = 1; l <= dim_; ++l) {
    ScalarExpr acc;
    for (int i = 1; i <= dim_; ++i)
      for (int j = 1; j <= dim_; ++j)
        for (int k = 1; k <= dim_; ++k)
          acc = acc + u.comp(i) * v.comp(j) * w.comp(k) * curvature_comp(i, j, k, l);
    r.comp(l) = acc;
  }
  return r;
}

void MetricG::check_invertible_at(const Point& p, double tol) const {
  EvalContext ctx(p);
  double d = det_.eval(ctx);
  if (std::abs(d) < tol) throw SingularMetric("metric determinant vanishes at sample point");
}

bool MetricG::positive_definite_at(const Point& p) const {
  // Sylvester: all leading principal minors positive.
  EvalContext ctx(p);
  std::vector<std::vector<double>> a(static_cast<std::size_t>(dim_),
                                     std::vector<double>(static_cast<std::size_t>(dim_)));
  for (int i = 1; i <= dim_; ++i)
    for (int j = 1; j <= dim_; ++j)
      a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          entry(i, j).eval(ctx);
  for (int n = 1; n <= dim_; ++n) {
    // Gaussian elimination determinant of the leading n-by-n block.
    std::vector<std::vector<double>> b(a.begin(), a.begin() + n);
    for (auto& row : b) row.resize(static_cast<std::size_t>(n));
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (piv < 0 || std::abs(b[r][c]) > std::abs(b[piv][c])) piv = r;
      if (std::abs(b[piv][c]) < 1e-14) return false;
      if (piv != c) {
        std::swap(b[piv], b[c]);
        det = -det;
      }
      det *= b[c][c];
      for (int r = c + 1; r < n; ++r) {
        double f = b[r][c] / b[c][c];
        for (int cc = c; cc < n; ++cc) b[r][cc] -= f * b[c][cc];
      }
    }
    if (det <= 0.0) return false;
  }
  return true;
}

// --- GradedMetric ---------------------------------------------------------

Form GradedMetric::pair(const Derivation& w1, const Derivation& w2) const {
  int dim = g_->dim();
  Form out(dim);
  for (const auto& t1 : w1.terms()) {
    for (const auto& t2 : w2.terms()) {
      Form base(dim);
      if (t1.gen == Gen::L && t2.gen == Gen::L) {
        base = Form::scalar(dim, g_->entry(t1.index, t2.index)).d();
      } else if (t1.gen == Gen::I && t2.gen == Gen::I) {
        continue;
      } else {
        base = Form::scalar(dim, g_->entry(t1.index, t2.index));
      }
      // <a T1, b T2> = a ^ ((-1)^{|T1||b|} b) ^ <T1,T2> per homogeneous b.
      for (const Form& bh : {t2.coeff.even_part(), t2.coeff.odd_part()}) {
        if (bh.is_structurally_zero()) continue;
        double sign = (gen_parity(t1.gen) * bh.parity()) % 2 == 1 ? -1.0 : 1.0;
        out = out + wedge(t1.coeff, wedge(bh, base)).mul_scalar(ScalarExpr::constant(sign));
      }
    }
  }
  return out;
}

// --- FrameBasis -------------------------------------------------------------

FrameBasis::FrameBasis(std::vector<VectorField> rows)
    : dim_(static_cast<int>(rows.size())), rows_(std::move(rows)) {
  std::vector<std::vector<ScalarExpr>> a(static_cast<std::size_t>(dim_),
                                         std::vector<ScalarExpr>(static_cast<std::size_t>(dim_)));
  for (int k = 1; k <= dim_; ++k) {
    if (row(k).dim() != dim_) throw DimensionMismatch("frame row dimension differs");
    for (int j = 1; j <= dim_; ++j)
      a[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] = row(k).comp(j);
  }
  inv_ = invert_matrix(a);
  row_diffs_.assign(static_cast<std::size_t>(dim_), {});
  for (int k = 1; k <= dim_; ++k) {
    auto& r = row_diffs_[static_cast<std::size_t>(k - 1)];
    for (int j = 1; j <= dim_; ++j) r.push_back(Form::scalar(dim_, row(k).comp(j)).d());
  }
}

Derivation FrameBasis::gen(Gen g, int k) const {
  return g == Gen::L ? Derivation::lift_L(row(k)) : Derivation::lift_i(row(k));
}

std::pair<std::vector<Form>, std::vector<Form>> FrameBasis::expand(const Derivation& w) const {
  if (w.dim() != dim_) throw DimensionMismatch("derivation dimension differs from frame");
  std::vector<Form> b(static_cast<std::size_t>(dim_), Form(dim_));
  std::vector<Form> c(static_cast<std::size_t>(dim_), Form(dim_));
  for (const auto& t : w.terms())
    (t.gen == Gen::L ? b : c)[static_cast<std::size_t>(t.index - 1)] = t.coeff;

  std::vector<Form> omega(static_cast<std::size_t>(dim_), Form(dim_));
  std::vector<Form> omega_i(static_cast<std::size_t>(dim_), Form(dim_));
  for (int k = 1; k <= dim_; ++k) {
    Form acc(dim_);
    for (int j = 1; j <= dim_; ++j)
      acc = acc + b[static_cast<std::size_t>(j - 1)].mul_scalar(inverse_entry(j, k));
    omega[static_cast<std::size_t>(k - 1)] = acc;
  }
  for (int k = 1; k <= dim_; ++k) {
    Form acc(dim_);
    for (int j = 1; j <= dim_; ++j) {
      Form cj = c[static_cast<std::size_t>(j - 1)];
      for (int l = 1; l <= dim_; ++l)
        cj = cj -
             wedge(omega[static_cast<std::size_t>(l - 1)],
                   row_diffs_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j - 1)]);
      acc = acc + cj.mul_scalar(inverse_entry(j, k));
    }
    omega_i[static_cast<std::size_t>(k - 1)] = acc;
  }
  return {std::move(omega), std::move(omega_i)};
}

// --- OrthoFrame -------------------------------------------------------------

OrthoFrame OrthoFrame::orthonormalize(const MetricG& g, std::size_t node_cap) {
  int m = g.dim();
  std::vector<VectorField> rows;
  for (int k = 1; k <= m; ++k) {
    VectorField v = VectorField::coordinate(m, k);
    for (const auto& e : rows) {
      ScalarExpr proj = g.g_scalar(v, e);
      v = v - e.scaled(proj);
    }
    ScalarExpr norm = sqrt(g.g_scalar(v, v));
    VectorField e(m);
    std::size_t nodes = 0;
    for (int j = 1; j <= m; ++j) {
      e.comp(j) = v.comp(j) / norm;
      nodes += e.comp(j).node_count();
    }
    if (nodes > node_cap)
      throw ExpressionBlowup("orthonormalization exceeded the expression size cap");
    rows.push_back(std::move(e));
  }
  return OrthoFrame(std::move(rows));
}

void OrthoFrame::validate_at(const MetricG& g, const Point& p, double tol) const {
  if (static_cast<int>(rows_.size()) != g.dim())
    throw FrameNotOrthonormal("frame row count differs from chart dimension");
  EvalContext ctx(p);
  for (int k = 1; k <= size(); ++k) {
    for (int l = 1; l <= size(); ++l) {
      double v = g.g_scalar(row(k), row(l)).eval(ctx);
      double want = k == l ? 1.0 : 0.0;
      if (std::abs(v - want) > tol)
        throw FrameNotOrthonormal("frame is not orthonormal at a sample point");
    }
  }
}

}  // namespace gconn
