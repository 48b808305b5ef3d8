#include <doctest.h>

#include "canvar/catalog.hpp"
#include "canvar/geometry.hpp"

using namespace canvar;

TEST_CASE("catalog: required entries are present") {
  auto ids = catalog_ids();
  for (const char* want :
       {"euclidean_2", "euclidean_3", "euclidean_4", "hyperbolic_2", "hyperbolic_3",
        "sphere_cap_product", "berger_s3", "warped_line", "incomplete_plane", "product_circle",
        "normal_field_r3"}) {
    CAPTURE(want);
    CHECK(std::find(ids.begin(), ids.end(), want) != ids.end());
  }
  CHECK_THROWS_AS(get_entry("nonexistent"), UnknownManifold);
}

TEST_CASE("catalog: every chart validates and every sweep field is unit") {
  Rng rng(1);
  for (const std::string& id : catalog_ids()) {
    const CatalogEntry& e = get_entry(id);
    CAPTURE(id);
    for (int s = 0; s < 5; ++s) {
      Vec p = sample_interior(e.chart, rng);
      CHECK_NOTHROW(evaluate_metric(e.chart, p));
    }
    for (const auto& [name, f] : e.unit_fields) {
      CAPTURE(name);
      CHECK_NOTHROW(unit_epsilon(e.chart, f));
    }
  }
}

TEST_CASE("catalog: every known assertion checks out") {
  DifferentiationConfig cfg;
  for (const std::string& id : catalog_ids()) {
    for (const KnownAssertion& a : expected_assertions(id)) {
      CAPTURE(id);
      CAPTURE(a.name);
      double r = a.residual(cfg);
      CHECK(r <= a.tolerance);
    }
  }
}

TEST_CASE("catalog: bundle invariants hold at 100+ random points across the catalog") {
  Rng rng(42);
  int total = 0;
  for (const std::string& id : catalog_ids()) {
    const CatalogEntry& e = get_entry(id);
    for (int s = 0; s < 8; ++s) {
      Vec p = sample_interior(e.chart, rng);
      CurvatureBundle b = curvature_bundle(e.chart, p);
      CAPTURE(id);
      CHECK(bundle_invariant_residual(b) <= 1e-9);
      ++total;
    }
  }
  CHECK(total >= 100);
}
