#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "canvar/errors.hpp"
#include "canvar/jet.hpp"
#include "canvar/linalg.hpp"
#include "canvar/rng.hpp"

namespace canvar {

enum class Signature { riemannian, lorentzian };
enum class DiffMode { forward_exact, finite_difference };

struct DifferentiationConfig {
  DiffMode mode = DiffMode::forward_exact;
  double fd_step = 1e-5;  // relative step, finite_difference mode only
  std::map<std::string, double> tolerances;

  double equality_tol() const {
    auto it = tolerances.find("equality");
    if (it != tolerances.end()) return it->second;
    return mode == DiffMode::forward_exact ? 1e-8 : 1e-4;
  }
  double inequality_tol() const {
    auto it = tolerances.find("inequality");
    if (it != tolerances.end()) return it->second;
    return 1e-10;
  }
};

// Axis-aligned open box of per-axis intervals.
struct Box {
  std::vector<std::pair<double, double>> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  bool contains(const Vec& p) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (!(p[i] > axes[i].first && p[i] < axes[i].second)) return false;
    return true;
  }
  // box shrunk by `frac` of each axis length from each boundary
  Box shrunk(double frac) const {
    Box b = *this;
    for (auto& ax : b.axes) {
      double margin = frac * (ax.second - ax.first);
      ax.first += margin;
      ax.second -= margin;
    }
    return b;
  }
};

using MetricFn = std::function<JetMat(const JetVec&)>;
using VectorFn = std::function<JetVec(const JetVec&)>;
using ScalarFn = std::function<Jet(const JetVec&)>;

struct Chart {
  int dim = 0;
  Box domain;
  MetricFn metric_fn;
  Signature signature_hint = Signature::riemannian;
  std::string name;
  double degeneracy_threshold = 1e-10;
  // Sub-box used for random sampling when the full domain exceeds what
  // double-precision curvature algebra can condition (unset: whole domain).
  std::optional<Box> sample_box;
};

struct VectorFieldExpr {
  int dim = 0;
  VectorFn components;
  std::string name;
};

struct ScalarFieldExpr {
  int dim = 0;
  ScalarFn value;
  std::string name;
};

// value + first + second coordinate derivatives of the metric at a point
struct MetricJets {
  Mat g;
  Ten3 dg;   // dg(a,i,j)   = d_a g_ij
  Ten4 d2g;  // d2g(a,b,i,j) = d_a d_b g_ij
};

struct FieldJets {
  Vec v;     // components E^k
  Mat d;     // d(a,k)     = d_a E^k
  Ten3 d2;   // d2(a,b,k)  = d_a d_b E^k
};

struct ScalarJets {
  double v = 0;
  Vec d;
  Mat d2;
};

JetVec seed_point(const Vec& p, int order = 2);

void require_interior(const Chart& chart, const Vec& p);

Mat metric_value(const Chart& chart, const Vec& p);
MetricJets metric_jets(const Chart& chart, const Vec& p, const DifferentiationConfig& cfg = {});
FieldJets field_jets(const VectorFieldExpr& field, const Vec& p,
                     const DifferentiationConfig& cfg = {});
ScalarJets scalar_jets(const ScalarFieldExpr& field, const Vec& p,
                       const DifferentiationConfig& cfg = {});

Vec field_value(const VectorFieldExpr& field, const Vec& p);
double scalar_value(const ScalarFieldExpr& field, const Vec& p);

// Validated metric evaluation: symmetry, nondegeneracy and signature checks.
Mat evaluate_metric(const Chart& chart, const Vec& p);

// Eigenvalue signs of a symmetric matrix: returns (negatives, positives, zeros
// below threshold).
struct SignatureCount {
  int negative = 0;
  int positive = 0;
  int null = 0;
};
SignatureCount metric_signature(const Mat& g, double threshold = 1e-10);

// Uniform point in the chart domain shrunk 5% from each boundary.
Vec sample_interior(const Chart& chart, Rng& rng);

}  // namespace canvar
