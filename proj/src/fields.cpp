#include "canvar/fields.hpp"

#include <cmath>

namespace canvar {

double trace(const Mat& m) {
  double s = 0;
  for (int i = 0; i < m.dim(); ++i) s += m(i, i);
  return s;
}

double trace_product(const Mat& a, const Mat& b) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * b(j, i);
  return s;
}

double endo_norm_sq(const MetricData& md, const Mat& T) {
  int n = T.dim();
  double s = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += md.g(k, l) * md.ginv(i, j) * T(k, i) * T(l, j);
  return s;
}

Mat orth_projector(const Mat& g, const Vec& E) {
  int n = g.dim();
  double ee = inner(g, E, E);
  Vec omega = matvec(g, E);
  Mat P(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) P(k, i) = (k == i ? 1.0 : 0.0) - E[k] * omega[i] / ee;
  return P;
}

FieldOps field_ops(const MetricData& md, const FieldJets& fj) {
  int n = md.g.dim();
  FieldOps f;
  f.E = fj.v;
  f.epsilon = inner(md.g, f.E, f.E);
  f.omega = matvec(md.g, f.E);

  f.A = Mat(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double s = fj.d(i, k);
      for (int m = 0; m < n; ++m) s += md.Gamma(k, i, m) * f.E[m];
      f.A(k, i) = s;
    }

  f.dA = Ten3(n);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double s = fj.d2(a, i, k);
        for (int m = 0; m < n; ++m)
          s += md.dGamma(a, k, i, m) * f.E[m] + md.Gamma(k, i, m) * fj.d(a, m);
        f.dA(a, k, i) = s;
      }

  f.accel = matvec(f.A, f.E);
  f.daccel = Mat(n);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += fj.d(a, i) * f.A(k, i) + f.E[i] * f.dA(a, k, i);
      f.daccel(a, k) = s;
    }

  f.nabla_omega = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += md.g(j, k) * f.A(k, i);
      f.nabla_omega(i, j) = s;
    }

  f.lie_g = Mat(n);
  f.d_omega = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      f.lie_g(i, j) = f.nabla_omega(i, j) + f.nabla_omega(j, i);
      f.d_omega(i, j) = f.nabla_omega(i, j) - f.nabla_omega(j, i);
    }

  f.d_domega = Ten3(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double nij = 0, nji = 0;
        for (int k = 0; k < n; ++k) {
          nij += md.dg(a, j, k) * f.A(k, i) + md.g(j, k) * f.dA(a, k, i);
          nji += md.dg(a, i, k) * f.A(k, j) + md.g(i, k) * f.dA(a, k, j);
        }
        f.d_domega(a, i, j) = nij - nji;
      }

  f.div = trace(f.A);
  f.ddiv.assign(n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) f.ddiv[a] += f.dA(a, i, i);

  f.A_adj = matmul(md.ginv, matmul(transpose(f.A), md.g));
  if (std::abs(f.epsilon) > 1e-12) {
    Mat P = orth_projector(md.g, f.E);
    f.A_orth = matmul(P, matmul(f.A_adj, P));
    f.A_prime = matmul(P, matmul(f.A, P));
  } else {
    f.A_orth = Mat(n);
    f.A_prime = Mat(n);
  }
  return f;
}

FieldOps field_ops(const Chart& chart, const VectorFieldExpr& E, const Vec& p,
                   const DifferentiationConfig& cfg) {
  require_interior(chart, p);
  return field_ops(metric_data(chart, p, cfg), field_jets(E, p, cfg));
}

FieldCalculus field_calculus(const Chart& chart, const VectorFieldExpr& E, const Vec& p,
                             const DifferentiationConfig& cfg) {
  require_interior(chart, p);
  MetricData md = metric_data(chart, p, cfg);
  FieldJets fj = field_jets(E, p, cfg);
  double ee = 0;
  {
    double s = 0;
    for (int i = 0; i < chart.dim; ++i)
      for (int j = 0; j < chart.dim; ++j) s += md.g(i, j) * fj.v[i] * fj.v[j];
    ee = s;
  }
  if (std::abs(ee) <= 1e-12)
    throw NullField("field '" + E.name + "' is null at the requested point");
  FieldOps f = field_ops(md, fj);
  FieldCalculus r;
  r.A_E = f.A;
  r.A_E_adjoint = f.A_adj;
  r.A_E_orth = f.A_orth;
  r.lie_g = f.lie_g;
  r.d_omega = f.d_omega;
  r.div = f.div;
  r.accel = f.accel;
  r.epsilon = f.epsilon;
  return r;
}

ScalarCalculus scalar_field_calculus(const Chart& chart, const ScalarFieldExpr& f, const Vec& p,
                                     const DifferentiationConfig& cfg) {
  require_interior(chart, p);
  MetricData md = metric_data(chart, p, cfg);
  ScalarJets sj = scalar_jets(f, p, cfg);
  int n = chart.dim;
  ScalarCalculus r;
  r.grad = matvec(md.ginv, sj.d);
  r.hessian = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = sj.d2(i, j);
      for (int k = 0; k < n; ++k) s -= md.Gamma(k, i, j) * sj.d[k];
      r.hessian(i, j) = s;
    }
  r.laplacian = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.laplacian += md.ginv(i, j) * r.hessian(i, j);
  return r;
}

Ten3 covariant_derivative_tensor(const Chart& chart, const Tensor3Field& T, const Vec& p,
                                 const Vec& direction, const DifferentiationConfig& cfg) {
  require_interior(chart, p);
  int n = chart.dim;
  MetricData md = metric_data(chart, p, cfg);
  Ten3 val(n);
  Ten4 dT(n);
  if (T.value_and_jet) {
    T.value_and_jet(p, val, dT);
  } else {
    val = T.value(p);
    for (int a = 0; a < n; ++a) {
      double h = cfg.fd_step * std::max(1.0, std::abs(p[a]));
      Vec pp = p, pm = p;
      pp[a] += h;
      pm[a] -= h;
      Ten3 tp = T.value(pp), tm = T.value(pm);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dT(a, k, i, j) = (tp(k, i, j) - tm(k, i, j)) / (2.0 * h);
    }
  }
  Ten3 out(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int a = 0; a < n; ++a) {
          double term = dT(a, k, i, j);
          for (int m = 0; m < n; ++m)
            term += md.Gamma(k, a, m) * val(m, i, j) - md.Gamma(m, a, i) * val(k, m, j) -
                    md.Gamma(m, a, j) * val(k, i, m);
          s += direction[a] * term;
        }
        out(k, i, j) = s;
      }
  return out;
}

Vec nabla_vector(const MetricData& md, const Vec& value, const Mat& dvalue, const Vec& X) {
  int n = md.g.dim();
  Vec r(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0;
    for (int a = 0; a < n; ++a) {
      double term = dvalue(a, k);
      for (int m = 0; m < n; ++m) term += md.Gamma(k, a, m) * value[m];
      s += X[a] * term;
    }
    r[k] = s;
  }
  return r;
}

double nabla_2form(const MetricData& md, const Mat& w, const Ten3& dw, const Vec& X, const Vec& U,
                   const Vec& V) {
  int n = md.g.dim();
  double s = 0;
  for (int a = 0; a < n; ++a) {
    if (X[a] == 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double term = dw(a, i, j);
        for (int m = 0; m < n; ++m)
          term -= md.Gamma(m, a, i) * w(m, j) + md.Gamma(m, a, j) * w(i, m);
        s += X[a] * term * U[i] * V[j];
      }
  }
  return s;
}

}  // namespace canvar
