#pragma once

#include "canvar/fields.hpp"
#include "canvar/immersion.hpp"

namespace canvar {

struct SampleSpec {
  uint64_t seed = 42;
  int count = 40;
};

struct VariationConfig {
  double t = 0;
  Chart base;
  VectorFieldExpr E;
};

// Rounded causal character of a unit field: +1 or -1. Estimated at the domain
// center, constancy asserted over deterministic samples.
double unit_epsilon(const Chart& chart, const VectorFieldExpr& E,
                    const DifferentiationConfig& cfg = {});

// g_t = g + t w (x) w along E. Throws NonUnitField / ForbiddenParameter.
Chart build_variation(const VariationConfig& cfg, const DifferentiationConfig& dcfg = {});

// D^t = Gamma(g_t) - Gamma(g) at p, as a (1,2) tensor.
Ten3 difference_tensor_direct(const VariationConfig& cfg, const Vec& p,
                              const DifferentiationConfig& dcfg = {});

// D^t together with its coordinate derivative, exact to machine precision.
void difference_tensor_jets(const Chart& base, const Chart& varied, const Vec& p, Ten3& D,
                            Ten4& dD, const DifferentiationConfig& dcfg = {});

// Jet-backed (1,2)-tensor field wrapping D^t, for covariant_derivative_tensor.
Tensor3Field difference_tensor_field(const VariationConfig& cfg,
                                     const DifferentiationConfig& dcfg = {});

// g_t(D^t(U,V),W) by the closed formula
// (t/2) ( w(W) (L_E g)(U,V) + w(U) dw(V,W) + w(V) dw(U,W) ).
double difference_tensor_formula(const VariationConfig& cfg, const Vec& p, const Vec& U,
                                 const Vec& V, const Vec& W,
                                 const DifferentiationConfig& dcfg = {});

// Max residual of each defining equation over seeded samples, normalized by
// (1 + magnitude of the dominant term).
struct FieldClassification {
  double is_unit = 0;
  double is_killing = 0;
  double is_closed = 0;
  double is_conformal = 0;
  double is_orthogonally_conformal = 0;
  double is_geodesic = 0;
  double is_parallel = 0;
  double is_orthogonally_normal = 0;
  double is_normal = 0;  // associated endomorphism commutes with its adjoint
  double conformal_rho_center = 0;
  double epsilon = 0;  // rounded g(E,E) at the domain center
  int sample_count = 0;
  uint64_t seed = 0;
};

FieldClassification classify_field(const Chart& chart, const VectorFieldExpr& E,
                                   const SampleSpec& spec, const DifferentiationConfig& cfg = {});

// Two-sided violation of the hypersurface-projection criterion for normal
// associated endomorphisms at parameter point q:
//   g(A_U(X),N)^2 - g(X,A_U(N))^2 = 2 g(U,N) ( g(A_U(X),S(X)) - g(A_U(S(X)),X) )
// maximized over a tangent frame (basis vectors and pair sums).
double projection_normality_residual(const Chart& chart, const VectorFieldExpr& U,
                                     const ImmersionSpec& hypersurface, const Vec& q,
                                     const DifferentiationConfig& cfg = {});

}  // namespace canvar
