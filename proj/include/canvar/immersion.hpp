#pragma once

#include "canvar/chart.hpp"

namespace canvar {

// A parametrized hypersurface: a smooth map from a (dim-1)-parameter box into
// the chart domain. Derivatives along the parameters come from evaluating the
// map on jets seeded in the parameters.
struct ImmersionSpec {
  int param_dim = 0;
  Box param_box;
  std::function<JetVec(const JetVec&)> map;
  std::string name;
};

struct ImmersionJets {
  Vec x;                     // ambient point
  std::vector<Vec> tangent;  // T_a^k = dx^k/dq^a
};

inline ImmersionJets immersion_jets(const ImmersionSpec& im, const Vec& q) {
  JetVec jq = seed_point(q, 1);
  JetVec jx = im.map(jq);
  int n = static_cast<int>(jx.size());
  ImmersionJets out;
  out.x.assign(n, 0.0);
  out.tangent.assign(im.param_dim, Vec(n, 0.0));
  for (int k = 0; k < n; ++k) {
    out.x[k] = jx[k].value();
    for (int a = 0; a < im.param_dim; ++a) out.tangent[a][k] = jx[k].deriv(a);
  }
  return out;
}

}  // namespace canvar
