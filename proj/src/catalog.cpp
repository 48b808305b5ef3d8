#include "canvar/catalog.hpp"

#include <cmath>

#include "canvar/geometry.hpp"

namespace canvar {

namespace {

const double kSqrt2 = std::sqrt(2.0);

Jet jzero(const JetVec& p) { return p[0] * 0.0; }

JetMat diag_metric(const JetVec& p, const std::vector<Jet>& d) {
  int n = static_cast<int>(d.size());
  JetMat g(n);
  Jet zero = jzero(p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = (i == j) ? d[i] : zero;
  return g;
}

VectorFieldExpr coordinate_field(int dim, int axis, const std::string& name) {
  VectorFieldExpr e;
  e.dim = dim;
  e.name = name;
  e.components = [dim, axis](const JetVec& p) {
    JetVec v(dim, p[0] * 0.0);
    v[axis] = p[0] * 0.0 + 1.0;
    return v;
  };
  return e;
}

Chart flat_chart(int n, bool lorentzian, const std::string& name, double halfwidth = 3.0) {
  Chart c;
  c.dim = n;
  c.domain.axes.assign(n, {-halfwidth, halfwidth});
  c.signature_hint = lorentzian ? Signature::lorentzian : Signature::riemannian;
  c.name = name;
  c.metric_fn = [n, lorentzian](const JetVec& p) {
    std::vector<Jet> d(n, p[0] * 0.0 + 1.0);
    if (lorentzian) d[0] = p[0] * 0.0 - 1.0;
    return diag_metric(p, d);
  };
  return c;
}

CatalogEntry make_euclidean(int n) {
  CatalogEntry e;
  e.id = "euclidean_" + std::to_string(n);
  e.chart = flat_chart(n, false, e.id);
  e.unit_fields["E"] = coordinate_field(n, 0, "E");
  e.known = {"flat for every variation parameter", "E is parallel"};
  e.provenance =
      "Euclidean space with a parallel unit field; its standard variation is the flat "
      "Lorentzian model";
  return e;
}

CatalogEntry make_minkowski(int n) {
  CatalogEntry e;
  e.id = "minkowski_" + std::to_string(n);
  e.chart = flat_chart(n, true, e.id);
  e.unit_fields["E"] = coordinate_field(n, 0, "E");
  e.known = {"flat", "E = d_t is parallel timelike"};
  e.provenance = "flat Lorentzian space; host for the lightlike hypersurface examples";
  return e;
}

CatalogEntry make_hyperbolic(int n) {
  CatalogEntry e;
  e.id = "hyperbolic_" + std::to_string(n);
  Chart c;
  c.dim = n;
  c.domain.axes.assign(n, {-2.0, 2.0});
  c.domain.axes[0] = {-1.2, 1.2};
  c.signature_hint = Signature::riemannian;
  c.name = e.id;
  c.metric_fn = [n](const JetVec& p) {
    std::vector<Jet> d(n, exp(2.0 * p[0]));
    d[0] = jzero(p) + 1.0;
    return diag_metric(p, d);
  };
  e.chart = c;
  e.unit_fields["E1"] = coordinate_field(n, 0, "E1");
  VectorFieldExpr e2;
  e2.dim = n;
  e2.name = "E2";
  e2.components = [n](const JetVec& p) {
    JetVec v(n, p[0] * 0.0);
    v[n - 1] = exp(-p[0]);
    return v;
  };
  e.unit_fields["E2"] = e2;
  e.known = {"constant sectional curvature -1",
             "E1 closed geodesic: variation at t=-2 has constant sectional curvature +1",
             "E2 unit non-Killing: variation at t=-2 has constant sectional curvature -1"};
  e.provenance =
      "hyperbolic space in horospherical coordinates; its standard variations are the "
      "constant-curvature Lorentzian models";
  return e;
}

CatalogEntry make_sphere2() {
  CatalogEntry e;
  e.id = "sphere_2";
  Chart c;
  c.dim = 2;
  // domain wide enough in phi to follow a full great circle in coordinates
  c.domain.axes = {{0.3, 2.8}, {-0.2, 6.6}};
  c.signature_hint = Signature::riemannian;
  c.name = e.id;
  c.metric_fn = [](const JetVec& p) {
    return diag_metric(p, {jzero(p) + 1.0, sin(p[0]) * sin(p[0])});
  };
  e.chart = c;
  e.unit_fields["E"] = coordinate_field(2, 0, "E");
  ScalarFieldExpr f;
  f.dim = 2;
  f.name = "f";
  f.value = [](const JetVec& p) { return cos(p[0]); };
  e.scalars["f"] = f;
  e.known = {"Gauss curvature +1", "E = d_theta closed geodesic",
             "height function f = cos(theta) satisfies Hess f = -f g"};
  e.provenance = "round unit two-sphere in polar coordinates with the height function of the pole";
  return e;
}

CatalogEntry make_sphere_cap_product() {
  CatalogEntry e;
  e.id = "sphere_cap_product";
  Chart c;
  c.dim = 3;
  c.domain.axes = {{-0.55, 0.55}, {-0.55, 0.55}, {-1.0, 1.0}};
  c.signature_hint = Signature::riemannian;
  c.name = e.id;
  // graph coordinates over the equatorial disk: g0_ij = delta_ij + u_i u_j/(1-|u|^2),
  // fiber block f^2 dt^2 with f = sqrt(1-|u|^2) > 0 on the whole chart
  c.metric_fn = [](const JetVec& p) {
    JetMat g(3);
    Jet zero = jzero(p);
    Jet f2 = 1.0 - p[0] * p[0] - p[1] * p[1];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = ((i == j) ? zero + 1.0 : zero) + p[i] * p[j] / f2;
    g(0, 2) = zero;
    g(1, 2) = zero;
    g(2, 0) = zero;
    g(2, 1) = zero;
    g(2, 2) = f2;
    return g;
  };
  e.chart = c;
  VectorFieldExpr E;
  E.dim = 3;
  E.name = "E";
  E.components = [](const JetVec& p) {
    JetVec v(3, p[0] * 0.0);
    v[2] = 1.0 / sqrt(1.0 - p[0] * p[0] - p[1] * p[1]);
    return v;
  };
  e.unit_fields["E"] = E;
  ScalarFieldExpr f;
  f.dim = 3;
  f.name = "f";
  f.value = [](const JetVec& p) { return sqrt(1.0 - p[0] * p[0] - p[1] * p[1]); };
  e.scalars["f"] = f;
  e.known = {"isometric to an open set of the round three-sphere (sectional +1)",
             "variation along E at t=-2 has constant sectional curvature +1",
             "E = (1/f) d_t is unit but not geodesic"};
  e.provenance =
      "warped product of an open spherical cap with a line; base and standard variation are "
      "constant-curvature models";
  return e;
}

CatalogEntry make_berger() {
  CatalogEntry e;
  e.id = "berger_s3";
  Chart c;
  c.dim = 3;
  c.domain.axes = {{0.3, 1.2}, {0.3, 5.9}, {0.3, 5.9}};
  c.signature_hint = Signature::riemannian;
  c.name = e.id;
  // Hopf coordinates (eta, xi1, xi2): g = d eta^2 + cos^2(eta) d xi1^2 + sin^2(eta) d xi2^2;
  // the Hopf field is d_xi1 + d_xi2
  c.metric_fn = [](const JetVec& p) {
    return diag_metric(p, {jzero(p) + 1.0, cos(p[0]) * cos(p[0]), sin(p[0]) * sin(p[0])});
  };
  e.chart = c;
  VectorFieldExpr E;
  E.dim = 3;
  E.name = "E";
  E.components = [](const JetVec& p) {
    JetVec v(3, p[0] * 0.0);
    v[1] = p[0] * 0.0 + 1.0;
    v[2] = p[0] * 0.0 + 1.0;
    return v;
  };
  e.unit_fields["E"] = E;
  e.known = {"round scalar curvature 6", "Hopf field is unit Killing geodesic",
             "scalar curvature of the variation is 2(3-t)", "Ric(E,E) = 2 = |A_E|^2",
             "lightlike sectional curvature of the t=-2 variation is >= 2"};
  e.provenance =
      "round three-sphere in Hopf coordinates; variations along the Hopf field are the Berger "
      "spheres";
  return e;
}

CatalogEntry make_warped_line(bool expfamily) {
  CatalogEntry e;
  e.id = expfamily ? "warped_line_exp" : "warped_line";
  Chart c;
  c.dim = 3;
  c.domain.axes = {{expfamily ? -1.5 : -2.0, expfamily ? 1.5 : 2.0}, {-3.0, 3.0}, {-3.0, 3.0}};
  c.signature_hint = Signature::lorentzian;
  c.name = e.id;
  if (expfamily) {
    c.metric_fn = [](const JetVec& p) {
      Jet w = exp(2.0 * p[0] * p[0]);
      return diag_metric(p, {jzero(p) - 1.0, w, w});
    };
  } else {
    c.metric_fn = [](const JetVec& p) {
      return diag_metric(p, {jzero(p) - 1.0, jzero(p) + 1.0, jzero(p) + 1.0});
    };
  }
  e.chart = c;
  e.unit_fields["E"] = coordinate_field(3, 0, "E");
  if (expfamily) {
    e.tags.insert("probe_only");
    e.known = {"E = d_t closed unit timelike, not Killing",
               "probe family: no completeness assertion is made"};
  } else {
    e.known = {"flat product", "E = d_t is parallel"};
  }
  e.provenance =
      expfamily ? "warped product of a line with a flat torus, rapidly growing warping; geodesic "
                  "probe evidence only"
                : "product of a line with a flat torus; complete in both causal characters";
  return e;
}

CatalogEntry make_incomplete_plane() {
  CatalogEntry e;
  e.id = "incomplete_plane";
  Chart c;
  c.dim = 2;
  // Coordinates rotated 45 degrees from the defining (x,y) frame: p runs along
  // the escape diagonal, q across it. The metric is then diagonal,
  //   g_R = e^{-2 sqrt2 p} dp^2 + e^{+2 sqrt2 p} dq^2,
  // which evaluates without catastrophic cancellation at large p; the (x,y)
  // component matrix (cosh/sinh of 2(x+y)) loses all significance once
  // x+y > ~9. The defining diagonal x = y = s maps to (p,q) = (sqrt2 s, 0).
  c.domain.axes = {{-1.5, 58.0}, {-2.5, 2.5}};
  // Conditioning of the metric degrades as e^{4 sqrt2 p}; random sampling for
  // curvature checks stays where double precision holds, while the full
  // domain hosts the finite-length ray.
  c.sample_box = Box{{{-1.5, 7.0}, {-2.5, 2.5}}};
  c.signature_hint = Signature::riemannian;
  c.name = e.id;
  c.metric_fn = [](const JetVec& p) {
    return diag_metric(p, {exp(-2.0 * kSqrt2 * p[0]), exp(2.0 * kSqrt2 * p[0])});
  };
  e.chart = c;
  VectorFieldExpr E;
  E.dim = 2;
  E.name = "E";
  E.components = [](const JetVec& p) {
    JetVec v(2);
    v[0] = exp(kSqrt2 * p[0]) * (1.0 / kSqrt2);
    v[1] = -exp(-kSqrt2 * p[0]) * (1.0 / kSqrt2);
    return v;
  };
  e.unit_fields["E"] = E;
  e.known = {"g_R(E,E) = 1 identically",
             "variation along E at t=-2 is the flat Lorentzian plane (g_L(E,E) = -1)",
             "the diagonal ray has finite total length sqrt(2)/2"};
  e.provenance =
      "Riemannian plane whose standard variation is the flat Lorentzian plane; carries a "
      "finite-length ray escaping to infinity";
  return e;
}

CatalogEntry make_product_circle() {
  CatalogEntry e;
  e.id = "product_circle";
  Chart c;
  c.dim = 3;
  c.domain.axes = {{-3.0, 3.0}, {-3.0, 3.0}, {-3.0, 3.0}};
  c.signature_hint = Signature::lorentzian;
  c.name = e.id;
  // flat torus times a timelike circle of radius f(x,y)
  c.metric_fn = [](const JetVec& p) {
    Jet f = 2.0 + 0.5 * sin(p[0]) * sin(p[1]);
    return diag_metric(p, {jzero(p) + 1.0, jzero(p) + 1.0, -(f * f)});
  };
  e.chart = c;
  VectorFieldExpr E;
  E.dim = 3;
  E.name = "E";
  E.components = [](const JetVec& p) {
    JetVec v(3, p[0] * 0.0);
    v[2] = 1.0 / (2.0 + 0.5 * sin(p[0]) * sin(p[1]));
    return v;
  };
  e.unit_fields["E"] = E;
  e.aux_fields["U"] = coordinate_field(3, 2, "U");
  ScalarFieldExpr lambda;
  lambda.dim = 3;
  lambda.name = "lambda";
  lambda.value = [](const JetVec& p) { return 2.0 + 0.5 * sin(p[0]) * sin(p[1]); };
  e.scalars["lambda"] = lambda;
  e.scalars["f"] = lambda;
  e.tags.insert("warped_circle");
  e.known = {"U = d_t is timelike Killing with |U| = lambda", "E = U/lambda is unit timelike"};
  e.provenance =
      "compact Riemannian base times a timelike circle of radius f; the model example for "
      "scaled Killing fields";
  return e;
}

CatalogEntry make_normal_field_r3() {
  CatalogEntry e;
  e.id = "normal_field_r3";
  e.chart = flat_chart(3, false, e.id);
  e.chart.domain.axes.assign(3, {0.5, 2.0});
  VectorFieldExpr U;
  U.dim = 3;
  U.name = "U";
  U.components = [](const JetVec& p) {
    JetVec v(3);
    v[0] = p[0] + p[1];
    v[1] = p[1] + p[2];
    v[2] = p[0] + p[2];
    return v;
  };
  e.aux_fields["U"] = U;
  VectorFieldExpr E;
  E.dim = 3;
  E.name = "E";
  E.components = [](const JetVec& p) {
    JetVec v(3);
    v[0] = p[0] + p[1];
    v[1] = p[1] + p[2];
    v[2] = p[0] + p[2];
    Jet inv = 1.0 / sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& comp : v) comp *= inv;
    return v;
  };
  e.unit_fields["E"] = E;
  e.known = {"A_U is normal but U is neither closed nor conformal",
             "the unitized field has orthogonally normal associated endomorphism"};
  e.provenance =
      "linear field on flat space whose associated endomorphism commutes with its adjoint "
      "without being closed or conformal";
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> v;
  v.push_back(make_euclidean(2));
  v.push_back(make_euclidean(3));
  v.push_back(make_euclidean(4));
  v.push_back(make_hyperbolic(2));
  v.push_back(make_hyperbolic(3));
  v.push_back(make_sphere2());
  v.push_back(make_sphere_cap_product());
  v.push_back(make_berger());
  v.push_back(make_warped_line(false));
  v.push_back(make_warped_line(true));
  v.push_back(make_incomplete_plane());
  v.push_back(make_product_circle());
  v.push_back(make_normal_field_r3());
  v.push_back(make_minkowski(3));
  v.push_back(make_minkowski(4));
  return v;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

// max |K(plane) - want| over seeded random nondegenerate planes
double sectional_residual(const Chart& chart, double want, uint64_t seed, int points) {
  Rng rng(seed);
  double worst = 0;
  int done = 0, attempts = 0;
  while (done < points && attempts < 100 * points) {
    ++attempts;
    Vec p = sample_interior(chart, rng);
    CurvatureBundle b = curvature_bundle(chart, p);
    Vec u(chart.dim), v(chart.dim);
    for (int i = 0; i < chart.dim; ++i) {
      u[i] = rng.symmetric();
      v[i] = rng.symmetric();
    }
    double Q = inner(b.g, u, u) * inner(b.g, v, v) - inner(b.g, u, v) * inner(b.g, u, v);
    if (std::abs(Q) < 1e-4) continue;
    worst = std::max(worst, std::abs(sectional(b, u, v) - want));
    ++done;
  }
  return worst;
}

Chart standard_variation(const CatalogEntry& e, const std::string& field, double t) {
  VariationConfig vc{t, e.chart, e.unit_fields.at(field)};
  return build_variation(vc);
}

}  // namespace

const CatalogEntry& get_entry(const std::string& id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return e;
  throw UnknownManifold("unknown manifold '" + id + "'");
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const CatalogEntry& e : catalog()) ids.push_back(e.id);
  return ids;
}

std::vector<KnownAssertion> expected_assertions(const std::string& id) {
  const CatalogEntry& e = get_entry(id);
  uint64_t seed = fnv1a(id);
  std::vector<KnownAssertion> out;

  auto classification = [&e, seed](const std::string& field, const DifferentiationConfig& cfg) {
    return classify_field(e.chart,
                          e.unit_fields.count(field) ? e.unit_fields.at(field)
                                                     : e.aux_fields.at(field),
                          SampleSpec{seed, 25}, cfg);
  };

  if (id.rfind("euclidean_", 0) == 0 || id.rfind("minkowski_", 0) == 0 || id == "warped_line") {
    out.push_back({"scalar curvature vanishes for the base and for t in {-2,3}", 1e-10,
                   [&e, seed](const DifferentiationConfig& cfg) {
                     double worst = 0;
                     Rng rng(seed);
                     for (double t : {0.0, -2.0, 3.0}) {
                       Chart c = t == 0.0 ? e.chart : standard_variation(e, "E", t);
                       for (int s = 0; s < 10; ++s) {
                         Vec p = sample_interior(c, rng);
                         worst = std::max(
                             worst, std::abs(curvature_bundle(c, p, std::nullopt, cfg).scalar));
                       }
                     }
                     return worst;
                   }});
    out.push_back({"E is parallel (classify_field.is_parallel)", 1e-10,
                   [classification](const DifferentiationConfig& cfg) {
                     return classification("E", cfg).is_parallel;
                   }});
  }

  if (id.rfind("hyperbolic_", 0) == 0) {
    int n = e.chart.dim;
    double want = -double(n) * (n - 1);
    out.push_back({"base scalar curvature is -n(n-1)", 1e-9,
                   [&e, seed, want](const DifferentiationConfig& cfg) {
                     Rng rng(seed);
                     double worst = 0;
                     for (int s = 0; s < 10; ++s) {
                       Vec p = sample_interior(e.chart, rng);
                       worst = std::max(
                           worst,
                           std::abs(curvature_bundle(e.chart, p, std::nullopt, cfg).scalar - want));
                     }
                     return worst;
                   }});
    out.push_back({"E1 closed and geodesic", 1e-10,
                   [classification](const DifferentiationConfig& cfg) {
                     auto c = classification("E1", cfg);
                     return std::max(c.is_closed, c.is_geodesic);
                   }});
    out.push_back({"variation along E1 at t=-2 has sectional curvature +1", 1e-8,
                   [&e, seed](const DifferentiationConfig&) {
                     return sectional_residual(standard_variation(e, "E1", -2.0), 1.0, seed, 20);
                   }});
    out.push_back({"variation along E2 at t=-2 has sectional curvature -1", 1e-8,
                   [&e, seed](const DifferentiationConfig&) {
                     return sectional_residual(standard_variation(e, "E2", -2.0), -1.0, seed, 20);
                   }});
  }

  if (id == "sphere_2") {
    out.push_back({"Gauss curvature +1", 1e-9, [&e, seed](const DifferentiationConfig&) {
                     return sectional_residual(e.chart, 1.0, seed, 20);
                   }});
    out.push_back({"E closed and geodesic", 1e-10,
                   [classification](const DifferentiationConfig& cfg) {
                     auto c = classification("E", cfg);
                     return std::max(c.is_closed, c.is_geodesic);
                   }});
    out.push_back({"Hess f = -f g (scalar_field_calculus)", 1e-9,
                   [&e, seed](const DifferentiationConfig& cfg) {
                     Rng rng(seed);
                     double worst = 0;
                     for (int s = 0; s < 15; ++s) {
                       Vec p = sample_interior(e.chart, rng);
                       ScalarCalculus sc =
                           scalar_field_calculus(e.chart, e.scalars.at("f"), p, cfg);
                       Mat g = metric_value(e.chart, p);
                       double f = scalar_value(e.scalars.at("f"), p);
                       for (int i = 0; i < 2; ++i)
                         for (int j = 0; j < 2; ++j)
                           worst = std::max(worst, std::abs(sc.hessian(i, j) + f * g(i, j)));
                     }
                     return worst;
                   }});
  }

  if (id == "sphere_cap_product") {
    out.push_back({"base sectional curvature +1", 1e-8, [&e, seed](const DifferentiationConfig&) {
                     return sectional_residual(e.chart, 1.0, seed, 20);
                   }});
    out.push_back({"variation along E at t=-2 has sectional curvature +1", 1e-8,
                   [&e, seed](const DifferentiationConfig&) {
                     return sectional_residual(standard_variation(e, "E", -2.0), 1.0, seed, 20);
                   }});
    out.push_back({"E is not geodesic (residual stays above 1e-3)", 1e30,
                   [classification](const DifferentiationConfig& cfg) {
                     return classification("E", cfg).is_geodesic > 1e-3 ? 0.0 : 1.0;
                   }});
  }

  if (id == "berger_s3") {
    out.push_back({"E unit Killing geodesic", 1e-10,
                   [classification](const DifferentiationConfig& cfg) {
                     auto c = classification("E", cfg);
                     return std::max({c.is_unit, c.is_killing, c.is_geodesic});
                   }});
    out.push_back({"scalar of g_t equals 2(3-t) for t in {-2,-0.5,1,5}", 1e-8,
                   [&e, seed](const DifferentiationConfig& cfg) {
                     Rng rng(seed);
                     double worst = 0;
                     for (double t : {-2.0, -0.5, 1.0, 5.0}) {
                       Chart c = standard_variation(e, "E", t);
                       for (int s = 0; s < 10; ++s) {
                         Vec p = sample_interior(c, rng);
                         double S = curvature_bundle(c, p, std::nullopt, cfg).scalar;
                         worst =
                             std::max(worst, std::abs(S - 2.0 * (3.0 - t)) / (1.0 + std::abs(S)));
                       }
                     }
                     return worst;
                   }});
    out.push_back({"Ric(E,E) = 2 = |A_E|^2", 1e-9,
                   [&e, seed](const DifferentiationConfig& cfg) {
                     Rng rng(seed);
                     double worst = 0;
                     for (int s = 0; s < 10; ++s) {
                       Vec p = sample_interior(e.chart, rng);
                       MetricData md = metric_data(e.chart, p, cfg);
                       FieldOps f = field_ops(md, field_jets(e.unit_fields.at("E"), p, cfg));
                       double ric = inner(md.Ricci, f.E, f.E);
                       worst = std::max(worst, std::abs(ric - 2.0));
                       worst = std::max(worst, std::abs(endo_norm_sq(md, f.A) - ric));
                     }
                     return worst;
                   }});
    out.push_back({"lightlike sectional curvature of the t=-2 variation is >= 2", 1e-9,
                   [&e, seed](const DifferentiationConfig& cfg) {
                     Chart gl = standard_variation(e, "E", -2.0);
                     Rng rng(seed);
                     double worst = 0;
                     for (int s = 0; s < 20; ++s) {
                       Vec p = sample_interior(gl, rng);
                       CurvatureBundle b = curvature_bundle(gl, p, std::nullopt, cfg);
                       Mat gr = metric_value(e.chart, p);
                       Vec E = field_value(e.unit_fields.at("E"), p);
                       // u = E + Y with Y a unit g_R-orthogonal direction, x unit
                       // orthogonal to E and Y
                       Frame fr = build_frame(gr, E, Signature::riemannian);
                       double c = rng.uniform(0.0, 6.283185307179586);
                       Vec Y = std::cos(c) * fr.vectors[0] + std::sin(c) * fr.vectors[1];
                       Vec x = -std::sin(c) * fr.vectors[0] + std::cos(c) * fr.vectors[1];
                       Vec u = E + Y;
                       double k = lightlike_sectional(b, u, x, E);
                       worst = std::max(worst, std::max(0.0, 2.0 - k));
                     }
                     return worst;
                   }});
  }

  if (id == "warped_line_exp") {
    out.push_back({"E closed unit timelike, not Killing", 1e-10,
                   [classification](const DifferentiationConfig& cfg) {
                     auto c = classification("E", cfg);
                     double r = std::max(c.is_closed, c.is_unit);
                     return c.is_killing > 1e-3 ? r : 1.0;
                   }});
  }

  if (id == "incomplete_plane") {
    out.push_back({"g_R(E,E) = 1 and g_L(E,E) = -1 identically", 1e-12,
                   [&e, seed, classification](const DifferentiationConfig& cfg) {
                     double worst = classification("E", cfg).is_unit;
                     Chart gl = standard_variation(e, "E", -2.0);
                     Rng rng(seed);
                     for (int s = 0; s < 15; ++s) {
                       Vec p = sample_interior(gl, rng);
                       Mat g = metric_value(gl, p);
                       Vec E = field_value(e.unit_fields.at("E"), p);
                       worst = std::max(worst, std::abs(inner(g, E, E) + 1.0));
                     }
                     return worst;
                   }});
    out.push_back({"variation at t=-2 is the flat Lorentzian plane (2 dp dq, relative)", 1e-14,
                   [&e, seed](const DifferentiationConfig&) {
                     Chart gl = standard_variation(e, "E", -2.0);
                     Rng rng(seed);
                     double worst = 0;
                     for (int s = 0; s < 15; ++s) {
                       Vec p = sample_interior(gl, rng);
                       Mat g = metric_value(gl, p);
                       double scale = 1.0 + max_abs(metric_value(e.chart, p));
                       worst = std::max({worst, std::abs(g(0, 0)) / scale,
                                         std::abs(g(1, 1)) / scale,
                                         std::abs(g(0, 1) - 1.0) / scale});
                     }
                     return worst;
                   }});
  }

  if (id == "product_circle") {
    out.push_back({"U timelike Killing with |U| = lambda; E = U/lambda unit", 1e-10,
                   [&e, seed](const DifferentiationConfig& cfg) {
                     FieldClassification cu =
                         classify_field(e.chart, e.aux_fields.at("U"), SampleSpec{seed, 25}, cfg);
                     FieldClassification ce =
                         classify_field(e.chart, e.unit_fields.at("E"), SampleSpec{seed, 25}, cfg);
                     double worst = std::max(cu.is_killing, ce.is_unit);
                     Rng rng(seed);
                     for (int s = 0; s < 10; ++s) {
                       Vec p = sample_interior(e.chart, rng);
                       Mat g = metric_value(e.chart, p);
                       Vec U = field_value(e.aux_fields.at("U"), p);
                       double lam = scalar_value(e.scalars.at("lambda"), p);
                       worst = std::max(worst, std::abs(inner(g, U, U) + lam * lam));
                     }
                     return worst;
                   }});
  }

  if (id == "normal_field_r3") {
    out.push_back({"A_U normal; U neither closed nor conformal", 1e-10,
                   [&e, seed](const DifferentiationConfig& cfg) {
                     FieldClassification cu =
                         classify_field(e.chart, e.aux_fields.at("U"), SampleSpec{seed, 25}, cfg);
                     if (cu.is_closed < 1e-3 || cu.is_conformal < 1e-3) return 1.0;
                     return cu.is_normal;
                   }});
    // Unitizing preserves orthogonal normality for closed or Killing fields
    // (A* = +-A makes the mixed projections agree) but not for this merely
    // normal field: <X,A_U U>^2 != <X,A*_U U>^2 off the diagonal x=y=z.
    out.push_back({"unitized field is NOT orthogonally normal (residual stays above 1e-3)", 1e30,
                   [classification](const DifferentiationConfig& cfg) {
                     return classification("E", cfg).is_orthogonally_normal > 1e-3 ? 0.0 : 1.0;
                   }});
  }

  return out;
}

}  // namespace canvar
