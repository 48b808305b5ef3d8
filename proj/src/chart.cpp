#include "canvar/chart.hpp"

#include <cmath>
#include <sstream>

namespace canvar {

JetVec seed_point(const Vec& p, int order) {
  int n = static_cast<int>(p.size());
  JetVec jp(n);
  for (int i = 0; i < n; ++i) jp[i] = Jet::variable(p[i], i, n, order);
  return jp;
}

static JetVec constant_point(const Vec& p, int order = 0) {
  int n = static_cast<int>(p.size());
  JetVec jp(n);
  for (int i = 0; i < n; ++i) jp[i] = Jet::constant(p[i], n, order);
  return jp;
}

void require_interior(const Chart& chart, const Vec& p) {
  if (static_cast<int>(p.size()) != chart.dim)
    throw PointOutsideDomain("point dimension " + std::to_string(p.size()) +
                             " does not match chart '" + chart.name + "' of dimension " +
                             std::to_string(chart.dim));
  if (!chart.domain.contains(p)) {
    std::ostringstream os;
    os << "point (";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ") outside domain of chart '" << chart.name << "'";
    throw PointOutsideDomain(os.str());
  }
}

Mat metric_value(const Chart& chart, const Vec& p) {
  JetMat jm = chart.metric_fn(constant_point(p));
  Mat g(chart.dim);
  for (int i = 0; i < chart.dim; ++i)
    for (int j = 0; j < chart.dim; ++j) g(i, j) = jm(i, j).value();
  return g;
}

static MetricJets metric_jets_exact(const Chart& chart, const Vec& p) {
  int n = chart.dim;
  JetMat jm = chart.metric_fn(seed_point(p, 2));
  MetricJets out{Mat(n), Ten3(n), Ten4(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Jet& e = jm(i, j);
      out.g(i, j) = e.value();
      for (int a = 0; a < n; ++a) {
        out.dg(a, i, j) = e.deriv(a);
        for (int b = 0; b < n; ++b) out.d2g(a, b, i, j) = e.deriv2(a, b);
      }
    }
  return out;
}

static MetricJets metric_jets_fd(const Chart& chart, const Vec& p, double rel_step) {
  int n = chart.dim;
  MetricJets out{metric_value(chart, p), Ten3(n), Ten4(n)};
  Vec h(n);
  for (int i = 0; i < n; ++i) h[i] = rel_step * std::max(1.0, std::abs(p[i]));

  auto at = [&](int a, double da, int b, double db) {
    Vec q = p;
    q[a] += da;
    if (b >= 0) q[b] += db;
    return metric_value(chart, q);
  };

  std::vector<Mat> plus(n), minus(n);
  for (int a = 0; a < n; ++a) {
    plus[a] = at(a, h[a], -1, 0);
    minus[a] = at(a, -h[a], -1, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.dg(a, i, j) = (plus[a](i, j) - minus[a](i, j)) / (2.0 * h[a]);
  }
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.d2g(a, a, i, j) =
            (plus[a](i, j) - 2.0 * out.g(i, j) + minus[a](i, j)) / (h[a] * h[a]);
    for (int b = a + 1; b < n; ++b) {
      Mat pp = at(a, h[a], b, h[b]);
      Mat pm = at(a, h[a], b, -h[b]);
      Mat mp = at(a, -h[a], b, h[b]);
      Mat mm = at(a, -h[a], b, -h[b]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = (pp(i, j) - pm(i, j) - mp(i, j) + mm(i, j)) / (4.0 * h[a] * h[b]);
          out.d2g(a, b, i, j) = v;
          out.d2g(b, a, i, j) = v;
        }
    }
  }
  return out;
}

MetricJets metric_jets(const Chart& chart, const Vec& p, const DifferentiationConfig& cfg) {
  require_interior(chart, p);
  if (cfg.mode == DiffMode::forward_exact) return metric_jets_exact(chart, p);
  return metric_jets_fd(chart, p, cfg.fd_step);
}

Vec field_value(const VectorFieldExpr& field, const Vec& p) {
  JetVec jv = field.components(constant_point(p));
  Vec v(jv.size());
  for (size_t k = 0; k < jv.size(); ++k) v[k] = jv[k].value();
  return v;
}

double scalar_value(const ScalarFieldExpr& field, const Vec& p) {
  return field.value(constant_point(p)).value();
}

static FieldJets field_jets_exact(const VectorFieldExpr& field, const Vec& p) {
  int n = static_cast<int>(p.size());
  JetVec jv = field.components(seed_point(p, 2));
  FieldJets out{Vec(n), Mat(n), Ten3(n)};
  for (int k = 0; k < n; ++k) {
    out.v[k] = jv[k].value();
    for (int a = 0; a < n; ++a) {
      out.d(a, k) = jv[k].deriv(a);
      for (int b = 0; b < n; ++b) out.d2(a, b, k) = jv[k].deriv2(a, b);
    }
  }
  return out;
}

static FieldJets field_jets_fd(const VectorFieldExpr& field, const Vec& p, double rel_step) {
  int n = static_cast<int>(p.size());
  FieldJets out{field_value(field, p), Mat(n), Ten3(n)};
  Vec h(n);
  for (int i = 0; i < n; ++i) h[i] = rel_step * std::max(1.0, std::abs(p[i]));
  auto at = [&](int a, double da, int b, double db) {
    Vec q = p;
    q[a] += da;
    if (b >= 0) q[b] += db;
    return field_value(field, q);
  };
  std::vector<Vec> plus(n), minus(n);
  for (int a = 0; a < n; ++a) {
    plus[a] = at(a, h[a], -1, 0);
    minus[a] = at(a, -h[a], -1, 0);
    for (int k = 0; k < n; ++k) out.d(a, k) = (plus[a][k] - minus[a][k]) / (2.0 * h[a]);
  }
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k < n; ++k)
      out.d2(a, a, k) = (plus[a][k] - 2.0 * out.v[k] + minus[a][k]) / (h[a] * h[a]);
    for (int b = a + 1; b < n; ++b) {
      Vec pp = at(a, h[a], b, h[b]);
      Vec pm = at(a, h[a], b, -h[b]);
      Vec mp = at(a, -h[a], b, h[b]);
      Vec mm = at(a, -h[a], b, -h[b]);
      for (int k = 0; k < n; ++k) {
        double v = (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h[a] * h[b]);
        out.d2(a, b, k) = v;
        out.d2(b, a, k) = v;
      }
    }
  }
  return out;
}

FieldJets field_jets(const VectorFieldExpr& field, const Vec& p, const DifferentiationConfig& cfg) {
  if (cfg.mode == DiffMode::forward_exact) return field_jets_exact(field, p);
  return field_jets_fd(field, p, cfg.fd_step);
}

ScalarJets scalar_jets(const ScalarFieldExpr& field, const Vec& p,
                       const DifferentiationConfig& cfg) {
  int n = static_cast<int>(p.size());
  ScalarJets out;
  out.d.assign(n, 0.0);
  out.d2 = Mat(n);
  if (cfg.mode == DiffMode::forward_exact) {
    Jet j = field.value(seed_point(p, 2));
    out.v = j.value();
    for (int a = 0; a < n; ++a) {
      out.d[a] = j.deriv(a);
      for (int b = 0; b < n; ++b) out.d2(a, b) = j.deriv2(a, b);
    }
    return out;
  }
  out.v = scalar_value(field, p);
  Vec h(n);
  for (int i = 0; i < n; ++i) h[i] = cfg.fd_step * std::max(1.0, std::abs(p[i]));
  auto at = [&](int a, double da, int b, double db) {
    Vec q = p;
    q[a] += da;
    if (b >= 0) q[b] += db;
    return scalar_value(field, q);
  };
  for (int a = 0; a < n; ++a) {
    double fp = at(a, h[a], -1, 0), fm = at(a, -h[a], -1, 0);
    out.d[a] = (fp - fm) / (2.0 * h[a]);
    out.d2(a, a) = (fp - 2.0 * out.v + fm) / (h[a] * h[a]);
    for (int b = a + 1; b < n; ++b) {
      double v = (at(a, h[a], b, h[b]) - at(a, h[a], b, -h[b]) - at(a, -h[a], b, h[b]) +
                  at(a, -h[a], b, -h[b])) /
                 (4.0 * h[a] * h[b]);
      out.d2(a, b) = v;
      out.d2(b, a) = v;
    }
  }
  return out;
}

SignatureCount metric_signature(const Mat& g, double threshold) {
  Vec eigvals;
  Mat eigvecs;
  sym_eigen(g, eigvals, eigvecs);
  SignatureCount c;
  for (double ev : eigvals) {
    if (ev < -threshold)
      ++c.negative;
    else if (ev > threshold)
      ++c.positive;
    else
      ++c.null;
  }
  return c;
}

Mat evaluate_metric(const Chart& chart, const Vec& p) {
  require_interior(chart, p);
  Mat g = metric_value(chart, p);
  int n = chart.dim;
  double scale = std::max(1.0, max_abs(g));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(g(i, j) - g(j, i)) > 1e-14 * scale)
        throw DegenerateMetric("metric of chart '" + chart.name + "' is not symmetric");
      double s = 0.5 * (g(i, j) + g(j, i));
      g(i, j) = s;
      g(j, i) = s;
    }
  double det = determinant(g);
  if (std::abs(det) < chart.degeneracy_threshold)
    throw DegenerateMetric("metric of chart '" + chart.name + "' is degenerate, |det|=" +
                           std::to_string(std::abs(det)));
  SignatureCount sc = metric_signature(g, chart.degeneracy_threshold);
  bool ok = (chart.signature_hint == Signature::riemannian)
                ? (sc.positive == n)
                : (sc.negative == 1 && sc.positive == n - 1);
  if (!ok)
    throw DegenerateMetric("metric signature of chart '" + chart.name +
                           "' does not match its signature hint");
  return g;
}

Vec sample_interior(const Chart& chart, Rng& rng) {
  Box b = (chart.sample_box ? *chart.sample_box : chart.domain).shrunk(0.05);
  Vec p(chart.dim);
  for (int i = 0; i < chart.dim; ++i) p[i] = rng.uniform(b.axes[i].first, b.axes[i].second);
  return p;
}

}  // namespace canvar
