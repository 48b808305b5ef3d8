#include "canvar/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace canvar {

MetricData metric_data(const Chart& chart, const Vec& p, const DifferentiationConfig& cfg) {
  int n = chart.dim;
  MetricJets mj = metric_jets(chart, p, cfg);
  MetricData md;
  md.point = p;
  md.g = mj.g;
  md.dg = mj.dg;
  md.d2g = mj.d2g;
  // symmetrize roundoff
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0.5 * (md.g(i, j) + md.g(j, i));
      md.g(i, j) = s;
      md.g(j, i) = s;
    }
  double det = 0;
  md.ginv = inverse(md.g, &det);
  if (std::abs(det) < chart.degeneracy_threshold)
    throw DegenerateMetric("metric of chart '" + chart.name + "' is degenerate at sample point");

  md.dginv = Ten3(n);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int m = 0; m < n; ++m)
          for (int q = 0; q < n; ++q) s += md.ginv(k, m) * md.dg(a, m, q) * md.ginv(q, l);
        md.dginv(a, k, l) = -s;
      }

  md.Gamma = Ten3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l)
          s += md.ginv(k, l) * (md.dg(i, l, j) + md.dg(j, i, l) - md.dg(l, i, j));
        s *= 0.5;
        md.Gamma(k, i, j) = s;
        md.Gamma(k, j, i) = s;
      }

  md.dGamma = Ten4(n);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0;
          for (int l = 0; l < n; ++l) {
            s += md.dginv(a, k, l) * (md.dg(i, l, j) + md.dg(j, i, l) - md.dg(l, i, j));
            s += md.ginv(k, l) *
                 (md.d2g(a, i, l, j) + md.d2g(a, j, i, l) - md.d2g(a, l, i, j));
          }
          s *= 0.5;
          md.dGamma(a, k, i, j) = s;
          md.dGamma(a, k, j, i) = s;
        }

  md.Riemann = Ten4(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = md.dGamma(i, l, j, k) - md.dGamma(j, l, i, k);
          for (int m = 0; m < n; ++m)
            s += md.Gamma(l, i, m) * md.Gamma(m, j, k) - md.Gamma(l, j, m) * md.Gamma(m, i, k);
          md.Riemann(l, i, j, k) = s;
        }

  md.Ricci = Mat(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += md.Riemann(i, i, j, k);
      md.Ricci(j, k) = s;
    }

  md.scalar = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) md.scalar += md.ginv(j, k) * md.Ricci(j, k);

  return md;
}

Ten3 christoffel(const Chart& chart, const Vec& p, const DifferentiationConfig& cfg) {
  return metric_data(chart, p, cfg).Gamma;
}

Frame build_frame(const Mat& g, const std::optional<Vec>& seed, Signature sig) {
  int n = g.dim();
  std::vector<Vec> candidates;
  if (seed) candidates.push_back(*seed);
  std::vector<int> coord_order(n);
  for (int i = 0; i < n; ++i) coord_order[i] = i;
  if (!seed && sig == Signature::lorentzian) {
    // a timelike direction goes first so the causal split is decided upfront
    int timelike = -1;
    for (int i = 0; i < n; ++i)
      if (g(i, i) < 0) {
        timelike = i;
        break;
      }
    if (timelike >= 0) {
      coord_order.clear();
      coord_order.push_back(timelike);
      for (int i = 0; i < n; ++i)
        if (i != timelike) coord_order.push_back(i);
    } else {
      Vec eigvals;
      Mat eigvecs;
      sym_eigen(g, eigvals, eigvecs);
      Vec tl(n);
      for (int k = 0; k < n; ++k) tl[k] = eigvecs(k, 0);  // most negative eigenvalue
      candidates.push_back(tl);
    }
  }
  for (int i : coord_order) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    candidates.push_back(e);
  }
  // fallbacks for charts where single coordinate directions degenerate
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec e(n, 0.0);
      e[i] = 1.0;
      e[j] = 1.0;
      candidates.push_back(e);
    }

  Frame f;
  for (const Vec& cand : candidates) {
    if (static_cast<int>(f.vectors.size()) == n) break;
    Vec v = cand;
    for (size_t k = 0; k < f.vectors.size(); ++k) {
      double c = f.signs[k] * inner(g, v, f.vectors[k]);
      v = v - c * f.vectors[k];
    }
    double q = inner(g, v, v);
    if (std::sqrt(std::abs(q)) < 1e-8) continue;
    double nrm = std::sqrt(std::abs(q));
    f.vectors.push_back(v * (1.0 / nrm));
    f.signs.push_back(q > 0 ? 1 : -1);
  }
  if (static_cast<int>(f.vectors.size()) != n)
    throw DegenerateMetric("frame construction failed: metric too degenerate");
  if (seed) {
    // seed was processed first; report it last
    std::rotate(f.vectors.begin(), f.vectors.begin() + 1, f.vectors.end());
    std::rotate(f.signs.begin(), f.signs.begin() + 1, f.signs.end());
  }
  return f;
}

CurvatureBundle curvature_bundle(const Chart& chart, const Vec& p,
                                 const std::optional<VectorFieldExpr>& seed_field,
                                 const DifferentiationConfig& cfg) {
  MetricData md = metric_data(chart, p, cfg);
  std::optional<Vec> seed;
  if (seed_field) {
    Vec e = field_value(*seed_field, p);
    if (std::abs(inner(md.g, e, e)) <= 1e-10)
      throw NullSeedField("seed field is null at the requested point");
    seed = e;
  }
  CurvatureBundle b;
  b.point = p;
  b.g = md.g;
  b.g_inv = md.ginv;
  b.Gamma = md.Gamma;
  b.Riemann = md.Riemann;
  b.Ricci = md.Ricci;
  b.scalar = md.scalar;
  b.frame = build_frame(md.g, seed, chart.signature_hint);
  return b;
}

Vec riemann_apply(const Ten4& R, const Vec& u, const Vec& v, const Vec& w) {
  int n = R.dim();
  Vec r(n, 0.0);
  for (int l = 0; l < n; ++l) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      if (u[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        if (v[j] == 0.0) continue;
        for (int k = 0; k < n; ++k) s += R(l, i, j, k) * u[i] * v[j] * w[k];
      }
    }
    r[l] = s;
  }
  return r;
}

double curvature4(const Mat& g, const Ten4& R, const Vec& u, const Vec& v, const Vec& w,
                  const Vec& z) {
  return inner(g, riemann_apply(R, u, v, w), z);
}

double sectional(const CurvatureBundle& bundle, const Vec& u, const Vec& v) {
  double Q = inner(bundle.g, u, u) * inner(bundle.g, v, v) -
             inner(bundle.g, u, v) * inner(bundle.g, u, v);
  if (std::abs(Q) < 1e-10)
    throw DegeneratePlane("plane is degenerate; use lightlike_sectional instead");
  return curvature4(bundle.g, bundle.Riemann, u, v, v, u) / Q;
}

double lightlike_sectional(const CurvatureBundle& bundle, const Vec& u, const Vec& x,
                           const Vec& E) {
  double uu = inner(bundle.g, u, u);
  double xx = inner(bundle.g, x, x);
  double uE = inner(bundle.g, u, E);
  double scale = std::max({1.0, norm2(u) * norm2(u), std::abs(xx)});
  if (std::abs(uu) > 1e-10 * scale) throw NotLightlike("u is not lightlike");
  if (!(xx > 0)) throw DegenerateSpan("x must be spacelike");
  if (std::abs(uE) < 1e-10) throw DegenerateSpan("g(u,E) vanishes");
  // independence of u and x via the Euclidean Gram determinant
  double g11 = dot(u, u), g12 = dot(u, x), g22 = dot(x, x);
  if (g11 * g22 - g12 * g12 < 1e-12 * g11 * g22)
    throw DegenerateSpan("u and x are linearly dependent");
  return curvature4(bundle.g, bundle.Riemann, u, x, x, u) / (uE * uE * xx);
}

double bundle_invariant_residual(const CurvatureBundle& b) {
  int n = b.g.dim();
  double mag = 0;
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) mag = std::max(mag, std::abs(b.Riemann(l, i, j, k)));
  double denom = 1.0 + mag;
  double worst = 0;

  // lowered tensor R_{lijk} = g(R(e_i,e_j)e_k, e_l)
  Ten4 low(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += b.g(l, m) * b.Riemann(m, i, j, k);
          low(l, i, j, k) = s;
        }
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          // antisymmetry in the plane arguments
          worst = std::max(worst, std::abs(low(l, i, j, k) + low(l, j, i, k)) / denom);
          // antisymmetry in (value, metric) slots
          worst = std::max(worst, std::abs(low(l, i, j, k) + low(k, i, j, l)) / denom);
          // pair symmetry g(R(U,V)W,Z) = g(R(W,Z)U,V):
          // low(l,i,j,k) = R(e_i,e_j,e_k,e_l) and the paired value swaps (i,j)<->(k,l)
          worst = std::max(worst, std::abs(low(l, i, j, k) - low(j, k, l, i)) / denom);
          // first Bianchi
          double bianchi = low(l, i, j, k) + low(l, j, k, i) + low(l, k, i, j);
          worst = std::max(worst, std::abs(bianchi) / denom);
        }

  // frame orthonormality and scalar consistency
  for (size_t a = 0; a < b.frame.vectors.size(); ++a)
    for (size_t c = 0; c < b.frame.vectors.size(); ++c) {
      double want = (a == c) ? b.frame.signs[a] : 0.0;
      worst = std::max(worst,
                       std::abs(inner(b.g, b.frame.vectors[a], b.frame.vectors[c]) - want));
    }
  double s = 0;
  for (size_t a = 0; a < b.frame.vectors.size(); ++a)
    s += b.frame.signs[a] * inner(b.Ricci, b.frame.vectors[a], b.frame.vectors[a]);
  worst = std::max(worst, std::abs(s - b.scalar) / (1.0 + std::abs(b.scalar)));
  return worst;
}

}  // namespace canvar
