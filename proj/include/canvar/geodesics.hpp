#pragma once

#include "canvar/geometry.hpp"

namespace canvar {

enum class Termination { reached_T, left_domain, step_underflow };

struct GeodesicSample {
  double s = 0;  // affine parameter
  Vec point;
  Vec velocity;
};

struct GeodesicTrace {
  std::vector<GeodesicSample> samples;
  Termination termination = Termination::reached_T;
  double norm_drift = 0;  // max |g(v,v) - g(v0,v0)| over samples
  double length = 0;      // arclength accumulated along the trace
};

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_steps = 200000;
  double min_step = 1e-14;
};

// Adaptive Dormand-Prince RK45 for gamma'' + Gamma(gamma')(gamma') = 0.
// Domain exit is located by bisection to within 1e-10 in affine parameter.
GeodesicTrace integrate_geodesic(const Chart& chart, const Vec& p0, const Vec& v0, double T,
                                 const IntegratorConfig& icfg = {},
                                 const DifferentiationConfig& dcfg = {});

// A parametrized path: s -> point, jet-evaluable for the velocity.
struct CurveExpr {
  int dim = 0;
  std::function<JetVec(const Jet&)> map;
  std::string name;
};

struct LengthResult {
  double value = 0;
  double error_estimate = 0;
};

// Adaptive quadrature of sqrt(g(c',c')) over [a,b]; absolute target 1e-8.
LengthResult curve_length(const Chart& chart, const CurveExpr& curve, double a, double b,
                          const DifferentiationConfig& dcfg = {});

struct ProbeSeedSpec {
  uint64_t seed = 42;
  int count = 20;
  std::optional<Vec> fixed_direction;  // coordinate direction before normalization
};

struct ProbeResult {
  int reached = 0;
  int left_domain = 0;
  int underflow = 0;
  double fraction_reached = 0;
  std::vector<Termination> per_seed;
  double max_norm_drift = 0;
};

// Purely observational: integrates seeded geodesics and reports terminations,
// never a completeness verdict.
ProbeResult completeness_probe(const Chart& chart, const ProbeSeedSpec& seeds, double T_max,
                               const IntegratorConfig& icfg = {},
                               const DifferentiationConfig& dcfg = {});

}  // namespace canvar
