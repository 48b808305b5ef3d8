#pragma once

#include "canvar/geometry.hpp"

namespace canvar {

// Pointwise data of a vector field E on a chart: the associated endomorphism
// A_E(V) = nabla_V E, its adjoint, the Lie derivative of the metric, d omega,
// divergence and acceleration, plus first derivatives of the derived objects
// so one more covariant derivative can be taken in closed form.
struct FieldOps {
  double epsilon = 0;  // g(E,E)
  Vec E;
  Vec omega;        // omega_i = g_ij E^j
  Mat A;            // A^k_i, (A v)^k = A^k_i v^i
  Mat A_adj;        // A^* = G^-1 A^T G
  Mat A_orth;       // P A^* P, the E-orthogonal part of the adjoint
  Mat A_prime;      // P A P, restriction of A to E-perp
  Mat nabla_omega;  // N(i,j) = (nabla_i omega)_j = g(nabla_i E, e_j)
  Mat lie_g;        // N + N^T
  Mat d_omega;      // N - N^T
  double div = 0;   // tr A
  Vec accel;        // nabla_E E

  Ten3 dA;        // dA(a,k,i) = d_a A^k_i
  Mat daccel;     // daccel(a,k)
  Ten3 d_domega;  // d_a (d_omega)_ij
  Vec ddiv;       // d_a div
};

FieldOps field_ops(const MetricData& md, const FieldJets& fj);
FieldOps field_ops(const Chart& chart, const VectorFieldExpr& E, const Vec& p,
                   const DifferentiationConfig& cfg = {});

// Spec-facing record of field_calculus
struct FieldCalculus {
  Mat A_E;
  Mat A_E_adjoint;
  Mat A_E_orth;
  Mat lie_g;
  Mat d_omega;
  double div = 0;
  Vec accel;
  double epsilon = 0;
};

FieldCalculus field_calculus(const Chart& chart, const VectorFieldExpr& E, const Vec& p,
                             const DifferentiationConfig& cfg = {});

struct ScalarCalculus {
  Vec grad;      // metric-raised differential
  Mat hessian;   // Hess_ij = d_i d_j f - Gamma^k_ij d_k f
  double laplacian = 0;
};

ScalarCalculus scalar_field_calculus(const Chart& chart, const ScalarFieldExpr& f, const Vec& p,
                                     const DifferentiationConfig& cfg = {});

// A pointwise-evaluable (1,2)-tensor field. `value` is required; fields that
// can produce exact coordinate derivatives supply `value_and_jet`, everything
// else is differentiated by central differences with cfg.fd_step.
struct Tensor3Field {
  std::function<Ten3(const Vec&)> value;
  std::function<void(const Vec&, Ten3&, Ten4&)> value_and_jet;  // optional; dT(a,k,i,j)
};

Ten3 covariant_derivative_tensor(const Chart& chart, const Tensor3Field& T, const Vec& p,
                                 const Vec& direction, const DifferentiationConfig& cfg = {});

// (nabla_X V)^k for a derived vector field given by value + coordinate jet
Vec nabla_vector(const MetricData& md, const Vec& value, const Mat& dvalue, const Vec& X);

// (nabla_X w)(U,V) for a 2-form given by value + coordinate jet
double nabla_2form(const MetricData& md, const Mat& w, const Ten3& dw, const Vec& X, const Vec& U,
                   const Vec& V);

// g_kl g^ij T^k_i T^l_j
double endo_norm_sq(const MetricData& md, const Mat& T);
double trace(const Mat& m);
double trace_product(const Mat& a, const Mat& b);

// orthogonal projector onto E-perp, P^k_i = delta^k_i - E^k omega_i / g(E,E)
Mat orth_projector(const Mat& g, const Vec& E);

}  // namespace canvar
