#pragma once

#include <memory>
#include <vector>

#include "gconn/derivation.hpp"

namespace gconn {

/// Riemannian metric on the chart, with Levi-Civita data cached at
/// construction (Christoffel symbols and curvature components).
class MetricG {
public:
  MetricG(int dim, std::vector<std::vector<ScalarExpr>> entries);

  int dim() const { return dim_; }
  const ScalarExpr& entry(int i, int j) const { return g_[idx(i, j)]; }
  const ScalarExpr& inverse_entry(int i, int j) const { return ginv_[idx(i, j)]; }
  const ScalarExpr& determinant() const { return det_; }

  /// Gamma^k_{ij}.
  const ScalarExpr& christoffel(int k, int i, int j) const;
  /// Component l of R^g(d_i, d_j) d_k.
  const ScalarExpr& curvature_comp(int i, int j, int k, int l) const;

  ScalarExpr g_scalar(const VectorField& v, const VectorField& w) const;
  VectorField nabla(const VectorField& v, const VectorField& w) const;
  /// R^g(u, v) w by tensorial contraction of the cached components.
  VectorField curvature(const VectorField& u, const VectorField& v, const VectorField& w) const;

  /// Throws SingularMetric when |det g| at p falls below tol.
  void check_invertible_at(const Point& p, double tol = 1e-12) const;
  bool positive_definite_at(const Point& p) const;

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(j - 1);
  }

  int dim_;
  std::vector<ScalarExpr> g_, ginv_, christoffel_, curvature_;
  ScalarExpr det_;
};

/// Symbolic matrix inverse via adjugate over determinant.
std::vector<std::vector<ScalarExpr>> invert_matrix(
    const std::vector<std::vector<ScalarExpr>>& a, ScalarExpr* det_out = nullptr);

/// The odd graded metric induced by g: <L,L> = d g(.,.), <L,i> = <i,L> = g(.,.),
/// <i,i> = 0, extended by the graded module rules.
class GradedMetric {
public:
  explicit GradedMetric(std::shared_ptr<const MetricG> g) : g_(std::move(g)) {}

  const MetricG& metric() const { return *g_; }
  int dim() const { return g_->dim(); }

  Form pair(const Derivation& w1, const Derivation& w2) const;

private:
  std::shared_ptr<const MetricG> g_;
};

/// Frame of vector fields with an invertible coefficient matrix; carries the
/// symbolic inverse so derivations expand over the frame generators
/// {L_{E_k}, i_{E_k}}.
class FrameBasis {
public:
  explicit FrameBasis(std::vector<VectorField> rows);

  int dim() const { return dim_; }
  const VectorField& row(int k) const { return rows_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<VectorField>& rows() const { return rows_; }
  const ScalarExpr& inverse_entry(int j, int k) const {
    return inv_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
  }

  Derivation gen(Gen g, int k) const;

  /// Coefficients of w over the frame generators: the L-row then the i-row.
  std::pair<std::vector<Form>, std::vector<Form>> expand(const Derivation& w) const;

private:
  int dim_;
  std::vector<VectorField> rows_;
  std::vector<std::vector<ScalarExpr>> inv_;
  std::vector<std::vector<Form>> row_diffs_;
};

/// Frame of vector fields orthonormal for g.
class OrthoFrame {
public:
  explicit OrthoFrame(std::vector<VectorField> rows) : rows_(std::move(rows)) {}

  /// Gram-Schmidt on the coordinate frame with symbolic division and sqrt.
  static OrthoFrame orthonormalize(const MetricG& g, std::size_t node_cap = 50000);

  int size() const { return static_cast<int>(rows_.size()); }
  const VectorField& row(int k) const { return rows_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<VectorField>& rows() const { return rows_; }

  /// Pointwise orthonormality; throws FrameNotOrthonormal beyond tol.
  void validate_at(const MetricG& g, const Point& p, double tol = 1e-10) const;

private:
  std::vector<VectorField> rows_;
};

}  // namespace gconn
