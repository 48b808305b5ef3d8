#include "canvar/variation.hpp"

#include <cmath>
#include <sstream>

namespace canvar {

static Vec box_center(const Box& b) {
  Vec c(b.dim());
  for (int i = 0; i < b.dim(); ++i) c[i] = 0.5 * (b.axes[i].first + b.axes[i].second);
  return c;
}

static double field_norm_sq_at(const Chart& chart, const VectorFieldExpr& E, const Vec& p) {
  Mat g = metric_value(chart, p);
  Vec e = field_value(E, p);
  return inner(g, e, e);
}

double unit_epsilon(const Chart& chart, const VectorFieldExpr& E,
                    const DifferentiationConfig& cfg) {
  (void)cfg;
  double center = field_norm_sq_at(chart, E, box_center(chart.domain));
  double eps = center >= 0 ? 1.0 : -1.0;
  Rng rng(0x5eedu);
  for (int s = 0; s < 16; ++s) {
    Vec p = sample_interior(chart, rng);
    double ee = field_norm_sq_at(chart, E, p);
    if (std::abs(ee - eps) > 1e-8)
      throw NonUnitField("field '" + E.name + "' on chart '" + chart.name +
                         "' is not unit: g(E,E)=" + std::to_string(ee));
  }
  return eps;
}

Chart build_variation(const VariationConfig& cfg, const DifferentiationConfig& dcfg) {
  double eps = unit_epsilon(cfg.base, cfg.E, dcfg);
  if (std::abs(cfg.t + eps) < 1e-6)
    throw ForbiddenParameter("variation parameter t=" + std::to_string(cfg.t) +
                             " too close to -epsilon");
  Chart out;
  out.dim = cfg.base.dim;
  out.domain = cfg.base.domain;
  out.sample_box = cfg.base.sample_box;
  out.degeneracy_threshold = cfg.base.degeneracy_threshold;
  out.signature_hint = cfg.t < -eps ? Signature::lorentzian : Signature::riemannian;
  {
    std::ostringstream os;
    os << cfg.base.name << "[t=" << cfg.t << ",E=" << cfg.E.name << "]";
    out.name = os.str();
  }
  MetricFn base_fn = cfg.base.metric_fn;
  VectorFn field_fn = cfg.E.components;
  double t = cfg.t;
  int n = cfg.base.dim;
  out.metric_fn = [base_fn, field_fn, t, n](const JetVec& p) {
    JetMat G = base_fn(p);
    JetVec E = field_fn(p);
    JetVec omega(n);
    for (int i = 0; i < n; ++i) {
      Jet s = G(i, 0) * E[0];
      for (int j = 1; j < n; ++j) s += G(i, j) * E[j];
      omega[i] = s;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) += t * omega[i] * omega[j];
    return G;
  };
  return out;
}

Ten3 difference_tensor_direct(const VariationConfig& cfg, const Vec& p,
                              const DifferentiationConfig& dcfg) {
  Chart varied = build_variation(cfg, dcfg);
  require_interior(cfg.base, p);
  MetricData base = metric_data(cfg.base, p, dcfg);
  MetricData var = metric_data(varied, p, dcfg);
  int n = cfg.base.dim;
  Ten3 D(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) D(k, i, j) = var.Gamma(k, i, j) - base.Gamma(k, i, j);
  return D;
}

void difference_tensor_jets(const Chart& base, const Chart& varied, const Vec& p, Ten3& D,
                            Ten4& dD, const DifferentiationConfig& dcfg) {
  MetricData b = metric_data(base, p, dcfg);
  MetricData v = metric_data(varied, p, dcfg);
  int n = base.dim;
  D = Ten3(n);
  dD = Ten4(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        D(k, i, j) = v.Gamma(k, i, j) - b.Gamma(k, i, j);
        for (int a = 0; a < n; ++a) dD(a, k, i, j) = v.dGamma(a, k, i, j) - b.dGamma(a, k, i, j);
      }
}

Tensor3Field difference_tensor_field(const VariationConfig& cfg,
                                     const DifferentiationConfig& dcfg) {
  Chart base = cfg.base;
  Chart varied = build_variation(cfg, dcfg);
  Tensor3Field f;
  f.value = [base, varied, dcfg](const Vec& p) {
    Ten3 D;
    Ten4 dD;
    difference_tensor_jets(base, varied, p, D, dD, dcfg);
    return D;
  };
  f.value_and_jet = [base, varied, dcfg](const Vec& p, Ten3& D, Ten4& dD) {
    difference_tensor_jets(base, varied, p, D, dD, dcfg);
  };
  return f;
}

double difference_tensor_formula(const VariationConfig& cfg, const Vec& p, const Vec& U,
                                 const Vec& V, const Vec& W, const DifferentiationConfig& dcfg) {
  unit_epsilon(cfg.base, cfg.E, dcfg);  // validates the configuration
  require_interior(cfg.base, p);
  FieldOps f = field_ops(cfg.base, cfg.E, p, dcfg);
  auto omega_of = [&](const Vec& X) { return dot(f.omega, X); };
  auto lie = [&](const Vec& X, const Vec& Y) { return inner(f.lie_g, X, Y); };
  auto dom = [&](const Vec& X, const Vec& Y) { return inner(f.d_omega, X, Y); };
  return 0.5 * cfg.t *
         (omega_of(W) * lie(U, V) + omega_of(U) * dom(V, W) + omega_of(V) * dom(U, W));
}

FieldClassification classify_field(const Chart& chart, const VectorFieldExpr& E,
                                   const SampleSpec& spec, const DifferentiationConfig& cfg) {
  FieldClassification r;
  r.sample_count = spec.count;
  r.seed = spec.seed;

  Vec center = box_center(chart.domain);
  {
    double ee = field_norm_sq_at(chart, E, center);
    r.epsilon = ee >= 0 ? 1.0 : -1.0;
    MetricData mdc = metric_data(chart, center, cfg);
    FieldOps fc = field_ops(mdc, field_jets(E, center, cfg));
    double rho = trace_product(fc.lie_g, mdc.ginv) / (2.0 * chart.dim);
    r.conformal_rho_center = rho;
  }

  Rng rng(spec.seed);
  for (int s = 0; s < spec.count; ++s) {
    Vec p = sample_interior(chart, rng);
    MetricData md = metric_data(chart, p, cfg);
    FieldOps f = field_ops(md, field_jets(E, p, cfg));
    if (std::abs(f.epsilon) < 1e-12)
      throw NullField("field '" + E.name + "' is null at a sample point");
    int n = chart.dim;

    double nfrob = frobenius(f.nabla_omega);
    double denom = 1.0 + 2.0 * nfrob;
    r.is_killing = std::max(r.is_killing, frobenius(f.lie_g) / denom);
    r.is_closed = std::max(r.is_closed, frobenius(f.d_omega) / denom);
    r.is_parallel = std::max(r.is_parallel, 2.0 * nfrob / denom);
    r.is_unit = std::max(r.is_unit, std::abs(f.epsilon - r.epsilon));

    double acc2 = inner(md.g, f.accel, f.accel);
    r.is_geodesic = std::max(r.is_geodesic, std::sqrt(std::abs(acc2)) / (1.0 + nfrob));

    double rho = trace_product(f.lie_g, md.ginv) / (2.0 * n);
    Mat conf(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) conf(i, j) = f.lie_g(i, j) - 2.0 * rho * md.g(i, j);
    r.is_conformal =
        std::max(r.is_conformal, frobenius(conf) / (1.0 + frobenius(f.lie_g) +
                                              2.0 * std::abs(rho) * frobenius(md.g)));

    // restriction to E-perp via an orthonormal frame seeded with E
    Frame fr = build_frame(md.g, f.E, chart.signature_hint);
    int m = n - 1;  // frame[0..m-1] spans E-perp, frame[m] = normalized E
    {
      Mat lhat(m), q1(m), q2(m);
      double ltr = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          lhat(i, j) = inner(f.lie_g, fr.vectors[i], fr.vectors[j]);
          q1(i, j) = inner(md.g, matvec(f.A, fr.vectors[i]), matvec(f.A, fr.vectors[j]));
          q2(i, j) =
              inner(md.g, matvec(f.A_orth, fr.vectors[i]), matvec(f.A_orth, fr.vectors[j]));
        }
      for (int i = 0; i < m; ++i) ltr += fr.signs[i] * lhat(i, i);
      double rho_perp = m > 0 ? ltr / (2.0 * m) : 0.0;
      double worst_conf = 0, worst_norm = 0, scale_conf = 1.0 + max_abs(lhat);
      double scale_norm = 1.0 + max_abs(q1) + max_abs(q2);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double want = (i == j) ? 2.0 * rho_perp * fr.signs[i] : 0.0;
          worst_conf = std::max(worst_conf, std::abs(lhat(i, j) - want));
          worst_norm = std::max(worst_norm, std::abs(q1(i, j) - q2(i, j)));
        }
      r.is_orthogonally_conformal =
          std::max(r.is_orthogonally_conformal, worst_conf / scale_conf);
      r.is_orthogonally_normal = std::max(r.is_orthogonally_normal, worst_norm / scale_norm);
    }

    Mat comm = matmul(f.A, f.A_adj);
    Mat comm2 = matmul(f.A_adj, f.A);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) comm(i, j) -= comm2(i, j);
    r.is_normal = std::max(
        r.is_normal, frobenius(comm) / (1.0 + frobenius(f.A) * frobenius(f.A_adj)));
  }
  return r;
}

double projection_normality_residual(const Chart& chart, const VectorFieldExpr& U,
                                     const ImmersionSpec& hypersurface, const Vec& q,
                                     const DifferentiationConfig& cfg) {
  int n = chart.dim;
  if (hypersurface.param_dim != n - 1)
    throw DegenerateHypersurface("immersion is not a hypersurface of the chart");

  // Evaluate along the immersion with jets in the parameters: the ambient
  // point, tangent basis, unit normal and its tangential derivatives. The
  // normal needs tangents-as-jets, i.e. second derivatives of the map.
  int pd = hypersurface.param_dim;
  JetVec jq2 = seed_point(q, 2);
  JetVec jx2 = hypersurface.map(jq2);
  Vec x(n);
  for (int k = 0; k < n; ++k) x[k] = jx2[k].value();
  require_interior(chart, x);
  auto tangent_entry = [&](int a, int k) {
    // d_a x^k as a first-order jet in the parameters
    Jet e = Jet::constant(jx2[k].deriv(a), pd, 1);
    Jet var = Jet::constant(0.0, pd, 1);
    for (int b = 0; b < pd; ++b) var += Jet::variable(0.0, b, pd, 1) * jx2[k].deriv2(a, b);
    return e + var;
  };
  // metric at x(q) as first-order jets in the parameters
  JetVec jx_param(n);
  for (int k = 0; k < n; ++k) {
    Jet e = Jet::constant(jx2[k].value(), pd, 1);
    for (int b = 0; b < pd; ++b) e += Jet::variable(0.0, b, pd, 1) * jx2[k].deriv(b);
    jx_param[k] = e;
  }
  JetMat Gp = chart.metric_fn(jx_param);

  // nu_k = (-1)^k det(minor_k) of the pd x n tangent matrix
  JetVec nu(n);
  for (int k = 0; k < n; ++k) {
    JetMat minor(pd);
    for (int a = 0; a < pd; ++a) {
      int col = 0;
      for (int c = 0; c < n; ++c) {
        if (c == k) continue;
        minor(a, col++) = tangent_entry(a, c);
      }
    }
    Jet det = Jet::constant(0.0, pd, 1);
    if (pd == 1) {
      det = minor(0, 0);
    } else if (pd == 2) {
      det = minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0);
    } else if (pd == 3) {
      det = minor(0, 0) * (minor(1, 1) * minor(2, 2) - minor(1, 2) * minor(2, 1)) -
            minor(0, 1) * (minor(1, 0) * minor(2, 2) - minor(1, 2) * minor(2, 0)) +
            minor(0, 2) * (minor(1, 0) * minor(2, 1) - minor(1, 1) * minor(2, 0));
    } else {
      throw DegenerateHypersurface("unsupported hypersurface parameter dimension");
    }
    nu[k] = (k % 2 == 0) ? det : -det;
  }

  // raise and normalize: N = g^-1 nu / sqrt(|g(nu#,nu#)|)
  JetMat Ginv = inverse_generic(Gp);
  JetVec Nraw(n);
  for (int k = 0; k < n; ++k) {
    Jet s = Ginv(k, 0) * nu[0];
    for (int l = 1; l < n; ++l) s += Ginv(k, l) * nu[l];
    Nraw[k] = s;
  }
  Jet nn = Nraw[0] * nu[0];
  for (int k = 1; k < n; ++k) nn += Nraw[k] * nu[k];
  double scale = 0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(nu[k].value()));
  if (std::abs(nn.value()) < 1e-10 * (1.0 + scale * scale))
    throw DegenerateHypersurface("hypersurface is degenerate at the requested point (no unit normal)");
  Jet inv_len = 1.0 / sqrt(nn.compose(std::abs(nn.value()),
                                      nn.value() >= 0 ? 1.0 : -1.0, 0.0));
  JetVec N(n);
  for (int k = 0; k < n; ++k) N[k] = Nraw[k] * inv_len;

  // shape operator on tangent basis: S(T_a) = -nabla_{T_a} N
  MetricData md = metric_data(chart, x, cfg);
  FieldOps fu = field_ops(md, field_jets(U, x, cfg));
  Vec Nval(n);
  for (int k = 0; k < n; ++k) Nval[k] = N[k].value();
  std::vector<Vec> Tval(pd, Vec(n));
  for (int a = 0; a < pd; ++a)
    for (int k = 0; k < n; ++k) Tval[a][k] = jx2[k].deriv(a);
  std::vector<Vec> S(pd, Vec(n, 0.0));
  for (int a = 0; a < pd; ++a)
    for (int k = 0; k < n; ++k) {
      double s = N[k].deriv(a);
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) s += md.Gamma(k, l, m) * Tval[a][l] * Nval[m];
      S[a][k] = -s;
    }

  // test vectors: basis directions and pair sums (quadratic identity needs
  // polarization)
  std::vector<Vec> tests;
  std::vector<std::vector<double>> coeffs;
  for (int a = 0; a < pd; ++a) {
    tests.push_back(Tval[a]);
    std::vector<double> c(pd, 0.0);
    c[a] = 1;
    coeffs.push_back(c);
  }
  for (int a = 0; a < pd; ++a)
    for (int b = a + 1; b < pd; ++b) {
      tests.push_back(Tval[a] + Tval[b]);
      std::vector<double> c(pd, 0.0);
      c[a] = 1;
      c[b] = 1;
      coeffs.push_back(c);
    }

  double gUN = inner(md.g, fu.E, Nval);
  double worst = 0;
  for (size_t ti = 0; ti < tests.size(); ++ti) {
    const Vec& X = tests[ti];
    Vec SX(n, 0.0);
    for (int a = 0; a < pd; ++a) SX = SX + coeffs[ti][a] * S[a];
    Vec AX = matvec(fu.A, X);
    Vec AN = matvec(fu.A, Nval);
    Vec ASX = matvec(fu.A, SX);
    double lhs = inner(md.g, AX, Nval) * inner(md.g, AX, Nval) -
                 inner(md.g, X, AN) * inner(md.g, X, AN);
    double rhs = 2.0 * gUN * (inner(md.g, AX, SX) - inner(md.g, ASX, X));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)));
  }
  return worst;
}

}  // namespace canvar
