#pragma once

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace canvar {

// Truncated second-order Taylor polynomial in up to kMaxJetVars variables.
// Seeding coordinates as jet variables and evaluating a smooth closure on
// them yields the value, gradient and Hessian of the closure in one pass,
// exact to roundoff. The variable set need not be the chart coordinates:
// evaluating a metric at a point whose coordinates are jets in curve or
// immersion parameters produces derivatives along that map by the chain
// rule.
inline constexpr int kMaxJetVars = 6;

class Jet {
public:
  Jet() = default;

  static Jet constant(double value, int nvars, int order = 2) {
    Jet j;
    j.v = value;
    j.n = nvars;
    j.ord = order;
    j.clear_derivs();
    return j;
  }

  static Jet variable(double value, int index, int nvars, int order = 2) {
    Jet j = constant(value, nvars, order);
    if (index < 0 || index >= nvars) throw std::out_of_range("Jet::variable index");
    if (order >= 1) j.g[index] = 1.0;
    return j;
  }

  double value() const { return v; }
  int nvars() const { return n; }
  int order() const { return ord; }
  double deriv(int i) const { return g[i]; }
  double deriv2(int i, int j) const { return h[i][j]; }

  Jet operator-() const {
    Jet r = *this;
    r.v = -r.v;
    if (r.ord >= 1)
      for (int i = 0; i < n; ++i) {
        r.g[i] = -r.g[i];
        if (r.ord >= 2)
          for (int j = 0; j < n; ++j) r.h[i][j] = -r.h[i][j];
      }
    return r;
  }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    if (ord >= 1)
      for (int i = 0; i < n; ++i) {
        g[i] += o.g[i];
        if (ord >= 2)
          for (int j = 0; j < n; ++j) h[i][j] += o.h[i][j];
      }
    return *this;
  }

  Jet& operator-=(const Jet& o) {
    v -= o.v;
    if (ord >= 1)
      for (int i = 0; i < n; ++i) {
        g[i] -= o.g[i];
        if (ord >= 2)
          for (int j = 0; j < n; ++j) h[i][j] -= o.h[i][j];
      }
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r = Jet::constant(a.v * b.v, a.n, a.ord);
    if (r.ord >= 1)
      for (int i = 0; i < r.n; ++i) {
        r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        if (r.ord >= 2)
          for (int j = 0; j < r.n; ++j)
            r.h[i][j] = a.h[i][j] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[i][j];
      }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  // scalar mixes
  friend Jet operator+(Jet a, double s) { a.v += s; return a; }
  friend Jet operator+(double s, Jet a) { a.v += s; return a; }
  friend Jet operator-(Jet a, double s) { a.v -= s; return a; }
  friend Jet operator-(double s, const Jet& a) { Jet r = -a; r.v += s; return r; }
  friend Jet operator*(Jet a, double s) {
    a.v *= s;
    if (a.ord >= 1)
      for (int i = 0; i < a.n; ++i) {
        a.g[i] *= s;
        if (a.ord >= 2)
          for (int j = 0; j < a.n; ++j) a.h[i][j] *= s;
      }
    return a;
  }
  friend Jet operator*(double s, Jet a) { return a * s; }
  friend Jet operator/(Jet a, double s) { return a * (1.0 / s); }
  friend Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }
  Jet& operator*=(double s) { return *this = *this * s; }
  Jet& operator+=(double s) { v += s; return *this; }
  Jet& operator-=(double s) { v -= s; return *this; }

  // f, f', f'' of a univariate function applied to this jet
  Jet compose(double f, double fp, double fpp) const {
    Jet r = Jet::constant(f, n, ord);
    if (ord >= 1)
      for (int i = 0; i < n; ++i) {
        r.g[i] = fp * g[i];
        if (ord >= 2)
          for (int j = 0; j < n; ++j) r.h[i][j] = fp * h[i][j] + fpp * g[i] * g[j];
      }
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    double iv = 1.0 / a.v;
    return a.compose(iv, -iv * iv, 2.0 * iv * iv * iv);
  }

private:
  void clear_derivs() {
    std::memset(g, 0, sizeof(g));
    std::memset(h, 0, sizeof(h));
  }

  double v = 0.0;
  int n = 0;
  int ord = 2;
  double g[kMaxJetVars] = {};
  double h[kMaxJetVars][kMaxJetVars] = {};
};

inline Jet exp(const Jet& a) {
  double e = std::exp(a.value());
  return a.compose(e, e, e);
}

inline Jet log(const Jet& a) {
  double iv = 1.0 / a.value();
  return a.compose(std::log(a.value()), iv, -iv * iv);
}

inline Jet sqrt(const Jet& a) {
  double s = std::sqrt(a.value());
  return a.compose(s, 0.5 / s, -0.25 / (s * s * s));
}

inline Jet sin(const Jet& a) {
  double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(s, c, -s);
}

inline Jet cos(const Jet& a) {
  double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(c, -s, -c);
}

inline Jet sinh(const Jet& a) {
  double s = std::sinh(a.value()), c = std::cosh(a.value());
  return a.compose(s, c, s);
}

inline Jet cosh(const Jet& a) {
  double s = std::sinh(a.value()), c = std::cosh(a.value());
  return a.compose(c, s, c);
}

inline Jet pow(const Jet& a, int k) {
  if (k == 0) return Jet::constant(1.0, a.nvars(), a.order());
  if (k < 0) return reciprocal(pow(a, -k));
  Jet r = a;
  for (int i = 1; i < k; ++i) r = r * a;
  return r;
}

}  // namespace canvar
