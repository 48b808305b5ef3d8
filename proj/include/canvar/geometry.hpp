#pragma once

#include <optional>

#include "canvar/chart.hpp"

namespace canvar {

// Everything derivable from the 2-jet of the metric at one point.
struct MetricData {
  Vec point;
  Mat g;
  Mat ginv;
  Ten3 dg;     // d_a g_ij
  Ten4 d2g;    // d_a d_b g_ij
  Ten3 dginv;  // d_a g^kl
  Ten3 Gamma;  // Gamma^k_ij, indexed (k,i,j)
  Ten4 dGamma; // d_a Gamma^k_ij, indexed (a,k,i,j)
  Ten4 Riemann;  // R^l_ijk, indexed (l,i,j,k): R(e_i,e_j)e_k = R^l_ijk e_l
  Mat Ricci;
  double scalar = 0;
};

MetricData metric_data(const Chart& chart, const Vec& p, const DifferentiationConfig& cfg = {});

struct Frame {
  std::vector<Vec> vectors;
  std::vector<int> signs;  // g(e_i,e_i) = signs[i] = +-1
};

// Gram-Schmidt frame. Candidates: optional seed first, then coordinate basis
// in index order; candidates whose norm after projection falls below 1e-8 are
// discarded. The seed, when present, lands in frame[last]; in Lorentzian
// signature without a seed a timelike direction is orthonormalized first.
Frame build_frame(const Mat& g, const std::optional<Vec>& seed, Signature sig);

struct CurvatureBundle {
  Vec point;
  Mat g;
  Mat g_inv;
  Ten3 Gamma;
  Ten4 Riemann;
  Mat Ricci;
  double scalar = 0;
  Frame frame;
};

Ten3 christoffel(const Chart& chart, const Vec& p, const DifferentiationConfig& cfg = {});

CurvatureBundle curvature_bundle(const Chart& chart, const Vec& p,
                                 const std::optional<VectorFieldExpr>& seed_field = std::nullopt,
                                 const DifferentiationConfig& cfg = {});

// (R(u,v)w)^l
Vec riemann_apply(const Ten4& R, const Vec& u, const Vec& v, const Vec& w);
// g(R(u,v)w, z)
double curvature4(const Mat& g, const Ten4& R, const Vec& u, const Vec& v, const Vec& w,
                  const Vec& z);

double sectional(const CurvatureBundle& bundle, const Vec& u, const Vec& v);

// Lightlike sectional curvature of span(u,x) with respect to the timelike
// unit E: g(R(u,x)x,u) / (g(u,E)^2 g(x,x)). Invariant under rescaling of u
// and x and under x -> x + c u.
double lightlike_sectional(const CurvatureBundle& bundle, const Vec& u, const Vec& x,
                           const Vec& E);

// Max violation of the Riemann symmetries, first Bianchi identity, frame
// orthonormality and frame-trace scalar consistency (relative). Test hook.
double bundle_invariant_residual(const CurvatureBundle& bundle);

}  // namespace canvar
