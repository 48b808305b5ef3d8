#pragma once

#include "canvar/catalog.hpp"
#include "canvar/geometry.hpp"

namespace canvar::testing {

// independent oracle: Koszul formula on centrally-differenced metric components
inline Ten3 koszul_fd(const Chart& chart, const Vec& p, double h = 1e-6) {
  int n = chart.dim;
  Mat g = metric_value(chart, p);
  Ten3 dg(n);
  for (int a = 0; a < n; ++a) {
    Vec pp = p, pm = p;
    pp[a] += h;
    pm[a] -= h;
    Mat gp = metric_value(chart, pp), gm = metric_value(chart, pm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg(a, i, j) = (gp(i, j) - gm(i, j)) / (2 * h);
  }
  Mat ginv = inverse(g);
  Ten3 gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg(i, l, j) + dg(j, i, l) - dg(l, i, j));
        gamma(k, i, j) = 0.5 * s;
      }
  return gamma;
}

}  // namespace canvar::testing
