#include "canvar/geodesics.hpp"

#include <cmath>

namespace canvar {

namespace {

// Christoffel symbols from a first-order metric jet (curvature not needed here)
Ten3 gamma_at(const Chart& chart, const Vec& x, const DifferentiationConfig& dcfg) {
  int n = chart.dim;
  if (dcfg.mode == DiffMode::finite_difference) return metric_data(chart, x, dcfg).Gamma;
  JetMat jm = chart.metric_fn(seed_point(x, 1));
  Mat g(n);
  Ten3 dg(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = jm(i, j).value();
      for (int a = 0; a < n; ++a) dg(a, i, j) = jm(i, j).deriv(a);
    }
  Mat ginv = inverse(g);
  Ten3 gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg(i, l, j) + dg(j, i, l) - dg(l, i, j));
        s *= 0.5;
        gamma(k, i, j) = s;
        gamma(k, j, i) = s;
      }
  return gamma;
}

struct State {
  Vec x, v;
};

bool finite(const State& s) {
  for (double c : s.x)
    if (!std::isfinite(c)) return false;
  for (double c : s.v)
    if (!std::isfinite(c)) return false;
  return true;
}

State rhs(const Chart& chart, const State& y, const DifferentiationConfig& dcfg) {
  int n = chart.dim;
  Ten3 gamma = gamma_at(chart, y.x, dcfg);
  State d;
  d.x = y.v;
  d.v.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += gamma(k, i, j) * y.v[i] * y.v[j];
    d.v[k] = -s;
  }
  return d;
}

State axpy(const State& y, double h, const std::vector<State>& ks, const double* c, int m) {
  State r = y;
  for (int s = 0; s < m; ++s) {
    if (c[s] == 0.0) continue;
    for (size_t i = 0; i < r.x.size(); ++i) {
      r.x[i] += h * c[s] * ks[s].x[i];
      r.v[i] += h * c[s] * ks[s].v[i];
    }
  }
  return r;
}

// Dormand-Prince 5(4)
struct DopriStep {
  State y5;
  double err = 0;  // scaled error estimate
  bool ok = false;
};

DopriStep dopri_step(const Chart& chart, const State& y, double h,
                     const DifferentiationConfig& dcfg, const IntegratorConfig& icfg) {
  static const double a2[] = {0.2};
  static const double a3[] = {3.0 / 40, 9.0 / 40};
  static const double a4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
  static const double a5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
  static const double a6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                              -5103.0 / 18656};
  static const double b5[] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                              11.0 / 84};
  static const double b4[] = {5179.0 / 57600,   0.0,          7571.0 / 16695, 393.0 / 640,
                              -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

  DopriStep out;
  std::vector<State> k;
  k.reserve(7);
  k.push_back(rhs(chart, y, dcfg));
  if (!finite(k.back())) return out;
  k.push_back(rhs(chart, axpy(y, h, k, a2, 1), dcfg));
  if (!finite(k.back())) return out;
  k.push_back(rhs(chart, axpy(y, h, k, a3, 2), dcfg));
  if (!finite(k.back())) return out;
  k.push_back(rhs(chart, axpy(y, h, k, a4, 3), dcfg));
  if (!finite(k.back())) return out;
  k.push_back(rhs(chart, axpy(y, h, k, a5, 4), dcfg));
  if (!finite(k.back())) return out;
  k.push_back(rhs(chart, axpy(y, h, k, a6, 5), dcfg));
  if (!finite(k.back())) return out;

  out.y5 = axpy(y, h, k, b5, 6);
  if (!finite(out.y5)) return out;
  k.push_back(rhs(chart, out.y5, dcfg));
  if (!finite(k.back())) return out;
  State y4 = axpy(y, h, k, b4, 7);

  double err = 0;
  int n = static_cast<int>(y.x.size());
  for (int i = 0; i < n; ++i) {
    double sx = icfg.abs_tol + icfg.rel_tol * std::max(std::abs(y.x[i]), std::abs(out.y5.x[i]));
    double sv = icfg.abs_tol + icfg.rel_tol * std::max(std::abs(y.v[i]), std::abs(out.y5.v[i]));
    double ex = (out.y5.x[i] - y4.x[i]) / sx;
    double ev = (out.y5.v[i] - y4.v[i]) / sv;
    err += ex * ex + ev * ev;
  }
  out.err = std::sqrt(err / (2 * n));
  out.ok = std::isfinite(out.err);
  return out;
}

double speed_at(const Chart& chart, const State& y) {
  Mat g = metric_value(chart, y.x);
  double q = inner(g, y.v, y.v);
  return std::sqrt(std::abs(q));
}

}  // namespace

GeodesicTrace integrate_geodesic(const Chart& chart, const Vec& p0, const Vec& v0, double T,
                                 const IntegratorConfig& icfg, const DifferentiationConfig& dcfg) {
  require_interior(chart, p0);
  if (!(T > 0)) throw Error("affine span T must be positive");

  GeodesicTrace trace;
  State y{p0, v0};
  double s = 0;
  double norm0 = inner(metric_value(chart, p0), v0, v0);
  trace.samples.push_back({0.0, y.x, y.v});

  double h = std::min(1e-3, T / 10);
  int steps = 0;
  double prev_speed = speed_at(chart, y);

  while (true) {
    if (++steps > icfg.max_steps) {
      trace.termination = Termination::step_underflow;
      break;
    }
    h = std::min(h, T - s);
    DopriStep st = dopri_step(chart, y, h, dcfg, icfg);
    if (!st.ok || st.err > 1.0) {
      h *= st.ok ? std::max(0.2, 0.9 * std::pow(st.err, -0.2)) : 0.25;
      if (h < icfg.min_step) {
        trace.termination = Termination::step_underflow;
        break;
      }
      continue;
    }
    if (!chart.domain.contains(st.y5.x)) {
      // locate the boundary crossing in affine parameter
      double lo = 0, hi = h;
      while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        DopriStep probe = dopri_step(chart, y, mid, dcfg, icfg);
        if (probe.ok && chart.domain.contains(probe.y5.x))
          lo = mid;
        else
          hi = mid;
      }
      if (lo > 0) {
        DopriStep fin = dopri_step(chart, y, lo, dcfg, icfg);
        if (fin.ok && chart.domain.contains(fin.y5.x)) {
          s += lo;
          double sp = speed_at(chart, fin.y5);
          trace.length += lo * 0.5 * (prev_speed + sp);
          y = fin.y5;
          trace.samples.push_back({s, y.x, y.v});
          double q = inner(metric_value(chart, y.x), y.v, y.v);
          trace.norm_drift = std::max(trace.norm_drift, std::abs(q - norm0));
        }
      }
      trace.termination = Termination::left_domain;
      break;
    }
    s += h;
    double sp = speed_at(chart, st.y5);
    trace.length += h * 0.5 * (prev_speed + sp);
    prev_speed = sp;
    y = st.y5;
    trace.samples.push_back({s, y.x, y.v});
    double q = inner(metric_value(chart, y.x), y.v, y.v);
    trace.norm_drift = std::max(trace.norm_drift, std::abs(q - norm0));
    if (s >= T - 1e-14) {
      trace.termination = Termination::reached_T;
      break;
    }
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(st.err, 1e-10), -0.2)));
  }
  return trace;
}

namespace {

double speed_on_curve(const Chart& chart, const CurveExpr& curve, double s) {
  Jet js = Jet::variable(s, 0, 1, 1);
  JetVec jx = curve.map(js);
  int n = static_cast<int>(jx.size());
  Vec x(n), v(n);
  for (int k = 0; k < n; ++k) {
    x[k] = jx[k].value();
    v[k] = jx[k].deriv(0);
  }
  require_interior(chart, x);
  Mat g = metric_value(chart, x);
  double q = inner(g, v, v);
  if (q < 0) {
    double scale = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) scale += std::abs(g(i, j) * v[i] * v[j]);
    if (q < -64.0 * 2.2e-16 * scale)
      throw NegativeSpeedSquared("curve has negative speed squared at s=" + std::to_string(s));
    q = 0;
  }
  return std::sqrt(q);
}

struct Quad {
  double value = 0;
  double error = 0;
};

Quad adaptive_simpson(const Chart& chart, const CurveExpr& curve, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = speed_on_curve(chart, curve, lm);
  double frm = speed_on_curve(chart, curve, rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) {
    return {left + right + diff / 15, std::abs(diff) / 15};
  }
  Quad l = adaptive_simpson(chart, curve, a, m, fa, flm, fm, left, tol / 2, depth - 1);
  Quad r = adaptive_simpson(chart, curve, m, b, fm, frm, fb, right, tol / 2, depth - 1);
  return {l.value + r.value, l.error + r.error};
}

}  // namespace

LengthResult curve_length(const Chart& chart, const CurveExpr& curve, double a, double b,
                          const DifferentiationConfig& dcfg) {
  (void)dcfg;
  if (a == b) return {0.0, 0.0};
  if (b < a) std::swap(a, b);
  double fa = speed_on_curve(chart, curve, a);
  double fb = speed_on_curve(chart, curve, b);
  double m = 0.5 * (a + b);
  double fm = speed_on_curve(chart, curve, m);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  Quad q = adaptive_simpson(chart, curve, a, b, fa, fm, fb, whole, 1e-8, 42);
  return {q.value, q.error};
}

ProbeResult completeness_probe(const Chart& chart, const ProbeSeedSpec& seeds, double T_max,
                               const IntegratorConfig& icfg, const DifferentiationConfig& dcfg) {
  ProbeResult out;
  Rng rng(seeds.seed);
  for (int s = 0; s < seeds.count; ++s) {
    Vec p0 = sample_interior(chart, rng);
    Vec v0(chart.dim);
    if (seeds.fixed_direction) {
      v0 = *seeds.fixed_direction;
    } else {
      for (int i = 0; i < chart.dim; ++i) v0[i] = rng.symmetric();
    }
    double q = inner(metric_value(chart, p0), v0, v0);
    if (std::abs(q) > 1e-6)
      for (double& c : v0) c /= std::sqrt(std::abs(q));
    GeodesicTrace tr = integrate_geodesic(chart, p0, v0, T_max, icfg, dcfg);
    out.per_seed.push_back(tr.termination);
    out.max_norm_drift = std::max(out.max_norm_drift, tr.norm_drift);
    switch (tr.termination) {
      case Termination::reached_T: ++out.reached; break;
      case Termination::left_domain: ++out.left_domain; break;
      case Termination::step_underflow: ++out.underflow; break;
    }
  }
  out.fraction_reached = seeds.count ? double(out.reached) / seeds.count : 0.0;
  return out;
}

}  // namespace canvar
