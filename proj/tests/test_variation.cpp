#include <doctest.h>

#include <cmath>

#include "canvar/variation.hpp"
#include "helpers.hpp"

using namespace canvar;

TEST_CASE("build_variation: t=0 reproduces the base metric") {
  const CatalogEntry& e = get_entry("berger_s3");
  Chart v = build_variation({0.0, e.chart, e.unit_fields.at("E")});
  Rng rng(2);
  for (int s = 0; s < 5; ++s) {
    Vec p = sample_interior(e.chart, rng);
    Mat a = metric_value(e.chart, p), b = metric_value(v, p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(1e-15));
  }
}

TEST_CASE("build_variation: Euclidean with parallel field at t=-2 gives the flat Lorentzian metric") {
  const CatalogEntry& e = get_entry("euclidean_4");
  Chart v = build_variation({-2.0, e.chart, e.unit_fields.at("E")});
  CHECK(v.signature_hint == Signature::lorentzian);
  Mat g = evaluate_metric(v, {0.1, 0.2, 0.3, 0.4});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(g(i, j) == doctest::Approx(i == j ? (i == 0 ? -1.0 : 1.0) : 0.0));
}

TEST_CASE("build_variation: hyperbolic space along the horospherical field at t=-2") {
  const CatalogEntry& e = get_entry("hyperbolic_3");
  Chart v = build_variation({-2.0, e.chart, e.unit_fields.at("E1")});
  CHECK(v.signature_hint == Signature::lorentzian);
  Rng rng(6);
  for (int s = 0; s < 5; ++s) {
    Vec p = sample_interior(v, rng);
    Mat g = metric_value(v, p);
    double e2x = std::exp(2 * p[0]);
    CHECK(g(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(g(1, 1) == doctest::Approx(e2x).epsilon(1e-14));
    CHECK(g(2, 2) == doctest::Approx(e2x).epsilon(1e-14));
    CHECK(std::abs(g(0, 1)) <= 1e-14 * e2x);
  }
}

TEST_CASE("build_variation: parameter and field validation") {
  const CatalogEntry& e = get_entry("euclidean_3");
  CHECK_THROWS_AS(build_variation({-1.0, e.chart, e.unit_fields.at("E")}), ForbiddenParameter);
  CHECK_THROWS_AS(build_variation({-1.0 + 1e-9, e.chart, e.unit_fields.at("E")}),
                  ForbiddenParameter);

  VectorFieldExpr twice = e.unit_fields.at("E");
  twice.components = [](const JetVec& p) {
    JetVec v(3, p[0] * 0.0);
    v[0] = p[0] * 0.0 + 2.0;
    return v;
  };
  CHECK_THROWS_AS(build_variation({1.0, e.chart, twice}), NonUnitField);

  // timelike unit field in a Lorentzian chart: forbidden parameter is +1
  const CatalogEntry& mk = get_entry("minkowski_3");
  CHECK_THROWS_AS(build_variation({1.0, mk.chart, mk.unit_fields.at("E")}), ForbiddenParameter);
  Chart v = build_variation({2.0, mk.chart, mk.unit_fields.at("E")});
  CHECK(v.signature_hint == Signature::riemannian);  // standard variation of Lorentzian base
}

TEST_CASE("difference tensor: trivial cases vanish") {
  const CatalogEntry& e = get_entry("euclidean_3");
  Vec p = {0.1, 0.2, 0.3};
  Ten3 d0 = difference_tensor_direct({0.0 + 1e-7, e.chart, e.unit_fields.at("E")}, p);
  Ten3 d2 = difference_tensor_direct({-2.0, e.chart, e.unit_fields.at("E")}, p);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(d0(k, i, j)) <= 1e-12);
        CHECK(std::abs(d2(k, i, j)) <= 1e-12);
      }
}

TEST_CASE("difference tensor: D(E,E) = eps t accel, and is symmetric") {
  Rng rng(21);
  for (const char* id : {"berger_s3", "sphere_cap_product"}) {
    const CatalogEntry& e = get_entry(id);
    const VectorFieldExpr& E = e.unit_fields.at("E");
    for (double t : {-2.0, 0.7}) {
      VariationConfig vc{t, e.chart, E};
      Vec p = sample_interior(e.chart, rng);
      Ten3 D = difference_tensor_direct(vc, p);
      MetricData md = metric_data(e.chart, p);
      FieldOps f = field_ops(md, field_jets(E, p));
      Vec dee(3, 0.0);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(D(k, i, j) - D(k, j, i)) <= 1e-9);
            dee[k] += D(k, i, j) * f.E[i] * f.E[j];
          }
      for (int k = 0; k < 3; ++k)
        CHECK(dee[k] == doctest::Approx(1.0 * t * f.accel[k]).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("difference tensor oracle: closed formula equals direct difference") {
  Rng rng(31);
  for (const char* id : {"berger_s3", "hyperbolic_3", "sphere_cap_product", "incomplete_plane",
                         "product_circle", "normal_field_r3"}) {
    const CatalogEntry& e = get_entry(id);
    for (const auto& [name, E] : e.unit_fields) {
      double eps = unit_epsilon(e.chart, E);
      for (double t : {-2.0, -0.5, 3.0}) {
        if (std::abs(t + eps) < 1e-6) continue;
        VariationConfig vc{t, e.chart, E};
        Chart varied = build_variation(vc);
        Vec p = sample_interior(e.chart, rng);
        Ten3 D = difference_tensor_direct(vc, p);
        Mat gt = metric_value(varied, p);
        int n = e.chart.dim;
        for (int trial = 0; trial < 6; ++trial) {
          Vec U(n), V(n), W(n);
          for (int i = 0; i < n; ++i) {
            U[i] = rng.symmetric();
            V[i] = rng.symmetric();
            W[i] = rng.symmetric();
          }
          Vec DUV(n, 0.0);
          for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) DUV[k] += D(k, i, j) * U[i] * V[j];
          double direct = inner(gt, DUV, W);
          double formula = difference_tensor_formula(vc, p, U, V, W);
          CHECK(std::abs(direct - formula) / (1.0 + std::abs(direct)) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("difference tensor as jet-backed field: parallel case differentiates to zero") {
  const CatalogEntry& e = get_entry("euclidean_3");
  VariationConfig vc{-2.0, e.chart, e.unit_fields.at("E")};
  Tensor3Field Dfield = difference_tensor_field(vc);
  Vec p = {0.3, -0.4, 0.9};
  Ten3 grad = covariant_derivative_tensor(e.chart, Dfield, p, {1.0, 1.0, 1.0});
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(grad(k, i, j)) <= 1e-12);
}

TEST_CASE("classify_field: catalog fields carry their expected classes") {
  SampleSpec spec{101, 30};

  const CatalogEntry& berger = get_entry("berger_s3");
  FieldClassification hopf = classify_field(berger.chart, berger.unit_fields.at("E"), spec);
  CHECK(hopf.is_killing <= 1e-10);
  CHECK(hopf.is_geodesic <= 1e-10);
  CHECK(hopf.is_unit <= 1e-10);
  CHECK(hopf.is_closed > 1e-3);
  CHECK(hopf.is_orthogonally_normal <= 1e-10);
  CHECK(hopf.epsilon == 1.0);

  const CatalogEntry& hyp = get_entry("hyperbolic_3");
  FieldClassification e1 = classify_field(hyp.chart, hyp.unit_fields.at("E1"), spec);
  CHECK(e1.is_closed <= 1e-10);
  CHECK(e1.is_geodesic <= 1e-10);
  CHECK(e1.is_killing > 1e-3);
  // closed fields are orthogonally conformal here: L_E g = 2 e^{2x} (dy^2+dz^2) = 2 rho g on E-perp
  CHECK(e1.is_orthogonally_conformal <= 1e-9);

  const CatalogEntry& nf = get_entry("normal_field_r3");
  FieldClassification u = classify_field(nf.chart, nf.aux_fields.at("U"), spec);
  CHECK(u.is_normal <= 1e-10);
  CHECK(u.is_closed > 1e-3);
  CHECK(u.is_conformal > 1e-3);

  // unitizing a Killing field does preserve orthogonal normality
  const CatalogEntry& pc = get_entry("product_circle");
  FieldClassification epc = classify_field(pc.chart, pc.unit_fields.at("E"), spec);
  CHECK(epc.is_orthogonally_normal <= 1e-10);
  CHECK(epc.is_geodesic > 1e-3);

  const CatalogEntry& mk = get_entry("minkowski_4");
  FieldClassification par = classify_field(mk.chart, mk.unit_fields.at("E"), spec);
  CHECK(par.is_parallel <= 1e-12);
  CHECK(par.epsilon == -1.0);
}

TEST_CASE("classify_field: parallel residual dominates killing and closed residuals") {
  SampleSpec spec{77, 20};
  for (const std::string& id : catalog_ids()) {
    const CatalogEntry& e = get_entry(id);
    for (const auto& [name, f] : e.unit_fields) {
      FieldClassification c = classify_field(e.chart, f, spec);
      CHECK(c.is_parallel >= std::max(c.is_killing, c.is_closed) - 1e-12);
    }
  }
}

TEST_CASE("classify_field is deterministic for a fixed seed") {
  const CatalogEntry& e = get_entry("product_circle");
  FieldClassification a = classify_field(e.chart, e.unit_fields.at("E"), {5, 25});
  FieldClassification b = classify_field(e.chart, e.unit_fields.at("E"), {5, 25});
  CHECK(a.is_killing == b.is_killing);
  CHECK(a.is_conformal == b.is_conformal);
  CHECK(a.conformal_rho_center == b.conformal_rho_center);
}

TEST_CASE("Killing fields stay Killing for the canonical variation (property)") {
  SampleSpec spec{11, 20};
  for (const char* id : {"berger_s3", "euclidean_3", "minkowski_3"}) {
    const CatalogEntry& e = get_entry(id);
    const VectorFieldExpr& E = e.unit_fields.at("E");
    FieldClassification base = classify_field(e.chart, E, spec);
    REQUIRE(base.is_killing <= 1e-10);
    double eps = base.epsilon;
    for (double t : {-3.0, -2.0, -0.5, 0.5, 2.0}) {
      if (std::abs(t + eps) < 1e-6) continue;
      Chart varied = build_variation({t, e.chart, E});
      FieldClassification vc = classify_field(varied, E, spec);
      CHECK(vc.is_killing <= 1e-8);
    }
  }
}

TEST_CASE("orthogonally conformal fields stay orthogonally conformal for g_t") {
  // L_E g_t agrees with L_E g on E-perp, so the class is preserved
  SampleSpec spec{13, 20};
  const CatalogEntry& e = get_entry("hyperbolic_2");
  const VectorFieldExpr& E = e.unit_fields.at("E1");
  FieldClassification base = classify_field(e.chart, E, spec);
  REQUIRE(base.is_orthogonally_conformal <= 1e-9);
  for (double t : {-2.0, 1.5}) {
    Chart varied = build_variation({t, e.chart, E});
    FieldClassification vc = classify_field(varied, E, spec);
    CHECK(vc.is_orthogonally_conformal <= 1e-8);
  }
}

namespace {

ImmersionSpec sphere_immersion(double radius) {
  ImmersionSpec im;
  im.param_dim = 2;
  im.param_box.axes = {{0.4, 2.7}, {0.2, 6.0}};
  im.name = "sphere";
  im.map = [radius](const JetVec& q) {
    JetVec x(3);
    x[0] = radius * sin(q[0]) * cos(q[1]);
    x[1] = radius * sin(q[0]) * sin(q[1]);
    x[2] = radius * cos(q[0]);
    return x;
  };
  return im;
}

ImmersionSpec flat_plane(double height) {
  ImmersionSpec im;
  im.param_dim = 2;
  im.param_box.axes = {{-2.0, 2.0}, {-2.0, 2.0}};
  im.name = "plane";
  im.map = [height](const JetVec& q) {
    JetVec x(3);
    x[0] = q[0];
    x[1] = q[1];
    x[2] = q[0] * 0.0 + height;
    return x;
  };
  return im;
}

VectorFieldExpr rotation_field() {
  VectorFieldExpr u;
  u.dim = 3;
  u.name = "rotation";
  u.components = [](const JetVec& p) {
    JetVec v(3);
    v[0] = -p[1];
    v[1] = p[0];
    v[2] = p[0] * 0.0;
    return v;
  };
  return u;
}

}  // namespace

TEST_CASE("projection_normality_residual: tangent, Killing/umbilic, and parallel cases") {
  Chart r3 = get_entry("euclidean_3").chart;
  Rng rng(19);

  // rotation field tangent to a horizontal plane: the criterion holds trivially
  ImmersionSpec plane = flat_plane(0.5);
  for (int s = 0; s < 5; ++s) {
    Vec q = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    CHECK(projection_normality_residual(r3, rotation_field(), plane, q) <= 1e-10);
  }

  // Killing field, umbilic hypersurface (round sphere)
  ImmersionSpec sph = sphere_immersion(1.5);
  for (int s = 0; s < 8; ++s) {
    Vec q = {rng.uniform(0.6, 2.4), rng.uniform(0.4, 5.8)};
    CHECK(projection_normality_residual(r3, rotation_field(), sph, q) <= 1e-9);
  }

  // parallel field, flat hyperplane: every term vanishes
  VectorFieldExpr parallel = get_entry("euclidean_3").unit_fields.at("E");
  CHECK(projection_normality_residual(r3, parallel, plane, {0.3, -0.7}) <= 1e-14);

  // lightlike hyperplane in a Lorentzian chart has no unit normal
  Chart mk = get_entry("minkowski_3").chart;
  ImmersionSpec nullplane;
  nullplane.param_dim = 2;
  nullplane.param_box.axes = {{-2.0, 2.0}, {-2.0, 2.0}};
  nullplane.map = [](const JetVec& q) {
    JetVec x(3);
    x[0] = q[0];
    x[1] = q[0];
    x[2] = q[1];
    return x;
  };
  CHECK_THROWS_AS(
      projection_normality_residual(mk, get_entry("minkowski_3").unit_fields.at("E"), nullplane,
                                    Vec{0.1, 0.2}),
      DegenerateHypersurface);
}
