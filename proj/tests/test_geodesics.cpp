#include <doctest.h>

#include <cmath>

#include "canvar/catalog.hpp"
#include "canvar/geodesics.hpp"

using namespace canvar;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// cubic hermite interpolation of the trace position at affine parameter s
Vec trace_point(const GeodesicTrace& tr, double s) {
  const auto& ss = tr.samples;
  REQUIRE(ss.size() >= 2);
  size_t hi = 1;
  while (hi + 1 < ss.size() && ss[hi].s < s) ++hi;
  const GeodesicSample& a = ss[hi - 1];
  const GeodesicSample& b = ss[hi];
  double h = b.s - a.s;
  double u = (s - a.s) / h;
  double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  Vec p(a.point.size());
  for (size_t i = 0; i < p.size(); ++i)
    p[i] = h00 * a.point[i] + h10 * h * a.velocity[i] + h01 * b.point[i] + h11 * h * b.velocity[i];
  return p;
}

}  // namespace

TEST_CASE("geodesics: Euclidean straight lines") {
  const Chart& c = get_entry("euclidean_3").chart;
  GeodesicTrace tr = integrate_geodesic(c, {0.1, 0.0, -0.2}, {0.3, 0.2, 0.1}, 4.0);
  CHECK(tr.termination == Termination::reached_T);
  CHECK(tr.norm_drift <= 1e-12);
  const GeodesicSample& last = tr.samples.back();
  CHECK(last.point[0] == doctest::Approx(0.1 + 0.3 * 4).epsilon(1e-10));
  CHECK(last.point[1] == doctest::Approx(0.2 * 4).epsilon(1e-10));
  CHECK(last.point[2] == doctest::Approx(-0.2 + 0.1 * 4).epsilon(1e-10));
  CHECK(tr.length == doctest::Approx(4 * norm2(Vec{0.3, 0.2, 0.1})).epsilon(1e-9));
}

TEST_CASE("geodesics: great circle on the sphere returns after 2 pi") {
  const Chart& c = get_entry("sphere_2").chart;
  const double pi = 3.14159265358979323846;
  Vec p0 = {pi / 2, 0.1};
  // unit initial velocity tilted against the equator
  double tilt = 0.6;
  Vec v0 = {std::sin(tilt), std::cos(tilt)};  // |v|^2 = sin^2 + cos^2 sin^2(theta)... theta=pi/2
  GeodesicTrace tr = integrate_geodesic(c, p0, v0, 2 * pi);
  CHECK(tr.termination == Termination::reached_T);
  CHECK(tr.norm_drift <= 1e-9);
  const GeodesicSample& last = tr.samples.back();
  CHECK(last.point[0] == doctest::Approx(p0[0]).epsilon(1e-6));
  CHECK(last.point[1] == doctest::Approx(p0[1] + 2 * pi).epsilon(1e-6));
  CHECK(tr.length == doctest::Approx(2 * pi).epsilon(1e-7));
}

TEST_CASE("geodesics: the incomplete plane ray stalls at finite affine parameter") {
  // The ray along the escape direction has finite total length sqrt(2)/2 and
  // reaches infinity at affine parameter 1/2 (for |v|^2 = 2); the integrator
  // records the blowup as a step underflow well before T = 10.
  const Chart& c = get_entry("incomplete_plane").chart;
  GeodesicTrace tr = integrate_geodesic(c, {0.0, 0.0}, {kSqrt2, 0.0}, 10.0);
  CHECK(tr.termination != Termination::reached_T);
  const GeodesicSample& last = tr.samples.back();
  CHECK(last.s < 0.51);
  CHECK(last.s > 0.45);
  CHECK(tr.length == doctest::Approx(kSqrt2 / 2).epsilon(1e-6));
  CHECK(last.point[0] > 15.0);  // ran far up the escape axis
}

TEST_CASE("geodesics: reparametrization traverses the same point set") {
  const Chart& c = get_entry("berger_s3").chart;
  Vec p0 = {0.7, 1.0, 2.0};
  Vec v0 = {0.2, 0.5, -0.3};
  GeodesicTrace t1 = integrate_geodesic(c, p0, v0, 2.0);
  GeodesicTrace t2 = integrate_geodesic(c, p0, v0 * 2.0, 1.0);
  REQUIRE(t1.termination == Termination::reached_T);
  REQUIRE(t2.termination == Termination::reached_T);
  for (double s : {0.2, 0.5, 0.9}) {
    Vec a = trace_point(t2, s);
    Vec b = trace_point(t1, 2 * s);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-6));
  }
}

TEST_CASE("geodesics: norm drift stays below 1e-9 per unit parameter on the catalog") {
  Rng rng(55);
  for (const std::string& id : catalog_ids()) {
    const CatalogEntry& e = get_entry(id);
    for (int s = 0; s < 3; ++s) {
      Vec p0 = sample_interior(e.chart, rng);
      Vec v0(e.chart.dim);
      for (int i = 0; i < e.chart.dim; ++i) v0[i] = rng.symmetric();
      double q = inner(metric_value(e.chart, p0), v0, v0);
      if (std::abs(q) > 1e-6)
        for (double& cmp : v0) cmp /= std::sqrt(std::abs(q));
      GeodesicTrace tr = integrate_geodesic(e.chart, p0, v0, 5.0);
      double span = tr.samples.back().s;
      if (span < 1e-6) continue;
      CAPTURE(id);
      CHECK(tr.norm_drift / std::max(1.0, span) <= 1e-9);
    }
  }
}

TEST_CASE("curve_length: straight lines, degenerate intervals, additivity") {
  const Chart& c = get_entry("euclidean_2").chart;
  CurveExpr diag;
  diag.dim = 2;
  diag.map = [](const Jet& s) { return JetVec{s, s}; };
  LengthResult l = curve_length(c, diag, 0.0, 2.0);
  CHECK(l.value == doctest::Approx(2 * kSqrt2).epsilon(1e-10));
  CHECK(curve_length(c, diag, 0.7, 0.7).value == 0.0);

  LengthResult a = curve_length(c, diag, 0.0, 0.9);
  LengthResult b = curve_length(c, diag, 0.9, 2.0);
  CHECK(a.value + b.value == doctest::Approx(l.value).epsilon(1e-9));
}

TEST_CASE("curve_length: the incomplete-plane ray has total length sqrt(2)/2") {
  const Chart& c = get_entry("incomplete_plane").chart;
  // image of the defining diagonal x = y = t under the 45-degree rotation
  CurveExpr ray;
  ray.dim = 2;
  ray.map = [](const Jet& s) { return JetVec{s * kSqrt2, s * 0.0}; };
  LengthResult l = curve_length(c, ray, 0.0, 40.0);
  CHECK(std::abs(l.value - kSqrt2 / 2) <= 1e-6);
  CHECK(l.error_estimate <= 1e-6);

  // additivity across the junction
  LengthResult l1 = curve_length(c, ray, 0.0, 6.0);
  LengthResult l2 = curve_length(c, ray, 6.0, 40.0);
  CHECK(l1.value + l2.value == doctest::Approx(l.value).epsilon(1e-8));
}

TEST_CASE("curve_length: timelike curves are rejected") {
  const Chart& c = get_entry("minkowski_3").chart;
  CurveExpr timelike;
  timelike.dim = 3;
  timelike.map = [](const Jet& s) { return JetVec{s, s * 0.5, s * 0.0}; };
  CHECK_THROWS_AS(curve_length(c, timelike, 0.0, 1.0), NegativeSpeedSquared);
}

TEST_CASE("completeness_probe: flat charts reach T, the incomplete plane does not") {
  ProbeSeedSpec spec;
  spec.seed = 9;
  spec.count = 10;

  ProbeResult flat = completeness_probe(get_entry("euclidean_3").chart, spec, 5.0);
  CHECK(flat.fraction_reached == 1.0);

  ProbeResult warped = completeness_probe(get_entry("warped_line").chart, spec, 5.0);
  CHECK(warped.fraction_reached == 1.0);

  ProbeSeedSpec ray = spec;
  ray.fixed_direction = Vec{1.0, 0.0};
  ProbeResult inc = completeness_probe(get_entry("incomplete_plane").chart, ray, 10.0);
  CHECK(inc.fraction_reached < 1.0);
  CHECK(inc.underflow + inc.left_domain > 0);

  // deterministic given the seed
  ProbeResult again = completeness_probe(get_entry("incomplete_plane").chart, ray, 10.0);
  CHECK(again.per_seed == inc.per_seed);
}
