#include <doctest.h>

#include <cmath>

#include "canvar/jet.hpp"
#include "canvar/rng.hpp"

using namespace canvar;

namespace {

// independent oracle: central finite differences of a plain double function
template <class F>
double fd_grad(F f, double x, double y, int var, double h = 1e-6) {
  double xp = var == 0 ? x + h : x, yp = var == 1 ? y + h : y;
  double xm = var == 0 ? x - h : x, ym = var == 1 ? y - h : y;
  return (f(xp, yp) - f(xm, ym)) / (2 * h);
}

template <class F>
double fd_hess(F f, double x, double y, int va, int vb, double h = 1e-4) {
  if (va == vb) {
    double xp = va == 0 ? x + h : x, yp = va == 1 ? y + h : y;
    double xm = va == 0 ? x - h : x, ym = va == 1 ? y - h : y;
    return (f(xp, yp) - 2 * f(x, y) + f(xm, ym)) / (h * h);
  }
  return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
}

}  // namespace

TEST_CASE("jet arithmetic matches finite differences on a composite expression") {
  auto f = [](double x, double y) {
    return std::exp(x * y) * std::sin(x) + std::sqrt(2.0 + y * y) / (1.0 + x * x) +
           std::log(2.0 + std::cos(y)) * std::sinh(x / 2.0);
  };
  auto fj = [](const Jet& x, const Jet& y) {
    return exp(x * y) * sin(x) + sqrt(2.0 + y * y) / (1.0 + x * x) +
           log(2.0 + cos(y)) * sinh(x / 2.0);
  };

  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    double x = rng.uniform(-1.2, 1.2), y = rng.uniform(-1.2, 1.2);
    Jet jx = Jet::variable(x, 0, 2);
    Jet jy = Jet::variable(y, 1, 2);
    Jet r = fj(jx, jy);

    CHECK(r.value() == doctest::Approx(f(x, y)).epsilon(1e-14));
    for (int v = 0; v < 2; ++v)
      CHECK(r.deriv(v) == doctest::Approx(fd_grad(f, x, y, v)).epsilon(1e-7));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(r.deriv2(a, b) == doctest::Approx(fd_hess(f, x, y, a, b)).epsilon(1e-5));
  }
}

TEST_CASE("jet division and integer powers") {
  Jet x = Jet::variable(0.7, 0, 1);
  Jet r = pow(x, 3) / (1.0 + x);
  double v = 0.7;
  double expect = v * v * v / (1.0 + v);
  double dexpect = (3 * v * v * (1 + v) - v * v * v) / ((1 + v) * (1 + v));
  CHECK(r.value() == doctest::Approx(expect).epsilon(1e-15));
  CHECK(r.deriv(0) == doctest::Approx(dexpect).epsilon(1e-14));
  CHECK(pow(x, 0).value() == 1.0);
  CHECK(pow(x, -2).value() == doctest::Approx(1.0 / (v * v)).epsilon(1e-14));
}

TEST_CASE("first-order jets carry no Hessian") {
  Jet x = Jet::variable(0.3, 0, 2, 1);
  Jet r = exp(x) * x;
  CHECK(r.deriv2(0, 0) == 0.0);
  CHECK(r.deriv(0) == doctest::Approx(std::exp(0.3) * 1.3).epsilon(1e-14));
}

TEST_CASE("deterministic rng is stable across runs") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(1);
  double u = c.uniform();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}
