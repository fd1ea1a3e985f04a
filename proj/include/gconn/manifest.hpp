#pragma once

#include <map>
#include <optional>
#include <set>

#include "gconn/lie_derivative.hpp"
#include "gconn/parallel.hpp"

namespace gconn {

/// Fully resolved chart manifest: metric, frames, named fields and forms, the
/// semi-symmetric P, distribution indices and deterministic sample points.
struct Manifest {
  std::vector<std::string> coords;
  std::shared_ptr<MetricG> metric;
  std::shared_ptr<LeviCivitaLift> lc;
  std::optional<OrthoFrame> frame;  // manifest [frame] section when present
  std::shared_ptr<ParallelFrame> parallel_frame;
  bool structure_constant_claimed = false;
  std::vector<double> lambdas = {0.3, 0.5, 0.7};
  std::optional<Form> blend;  // even blend form for the omega connection

  std::map<std::string, VectorField> vectors;
  std::map<std::string, Form> forms;

  std::string p_spec = "none";
  Derivation p;                       // resolved semi-symmetric P (may be zero)
  std::optional<VectorField> p_u;     // the U of "i(U)" / "omega*L(U)"
  std::optional<Form> p_omega;        // the omega of "omega*L(U)"

  std::set<int> distribution;  // empty when no [distribution] section

  std::vector<Point> points;
  double tolerance = 1e-8;

  std::string manifest_hash;  // FNV-1a of the file bytes, hex

  Manifest() : p(0) {}

  int dim() const { return static_cast<int>(coords.size()); }
  GradedMetric graded() const { return GradedMetric(metric); }
  /// The frame Ricci sums run over: the manifest frame when present, else
  /// Gram-Schmidt of the coordinate frame.
  OrthoFrame ricci_frame() const;
  DistributionSplit split() const;

  /// Parses "<form-literal> * L(name)" / "i(name)" / "L(name)" derivation
  /// sums against this manifest's names.
  Derivation parse_derivation(const std::string& text) const;
};

Manifest load_manifest(const std::string& path);
Manifest parse_manifest_text(const std::string& text, const std::string& hash_source);

std::uint64_t fnv1a64(const std::string& bytes);

/// Deterministic sampling identical across platforms.
std::vector<Point> sample_box(const std::vector<std::pair<double, double>>& domain, int count,
                              std::uint64_t seed);

}  // namespace gconn
