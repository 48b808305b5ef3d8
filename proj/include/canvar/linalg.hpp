#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "canvar/jet.hpp"

namespace canvar {

using Vec = std::vector<double>;

// dim x dim matrix, row-major, dim <= kMaxJetVars in practice
template <class T>
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(int n, T fill = T{}) : n_(n), a_(static_cast<size_t>(n) * n, fill) {}
  int dim() const { return n_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

private:
  int n_ = 0;
  std::vector<T> a_;
};

template <class T>
class Tensor3 {  // T^k_{ij} indexed (k,i,j)
public:
  Tensor3() = default;
  explicit Tensor3(int n, T fill = T{}) : n_(n), a_(static_cast<size_t>(n) * n * n, fill) {}
  int dim() const { return n_; }
  T& operator()(int k, int i, int j) { return a_[(static_cast<size_t>(k) * n_ + i) * n_ + j]; }
  const T& operator()(int k, int i, int j) const {
    return a_[(static_cast<size_t>(k) * n_ + i) * n_ + j];
  }

private:
  int n_ = 0;
  std::vector<T> a_;
};

template <class T>
class Tensor4 {  // indexed (a,b,c,d)
public:
  Tensor4() = default;
  explicit Tensor4(int n, T fill = T{}) : n_(n), a_(static_cast<size_t>(n) * n * n * n, fill) {}
  int dim() const { return n_; }
  T& operator()(int a, int b, int c, int d) {
    return a_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
  const T& operator()(int a, int b, int c, int d) const {
    return a_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }

private:
  int n_ = 0;
  std::vector<T> a_;
};

using Mat = Matrix<double>;
using Ten3 = Tensor3<double>;
using Ten4 = Tensor4<double>;
using JetVec = std::vector<Jet>;
using JetMat = Matrix<Jet>;

inline Vec operator+(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Vec operator-(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Vec operator*(Vec a, double s) {
  for (double& x : a) x *= s;
  return a;
}
inline Vec operator*(double s, Vec a) { return a * s; }

inline double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

// v^T G w
inline double inner(const Mat& g, const Vec& v, const Vec& w) {
  double s = 0;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) s += g(i, j) * v[i] * w[j];
  return s;
}

inline Vec matvec(const Mat& m, const Vec& v) {
  Vec r(m.dim(), 0.0);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  int n = a.dim();
  Mat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += a(i, j) * b(j, k);
      r(i, k) = s;
    }
  return r;
}

inline Mat transpose(const Mat& a) {
  Mat r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(j, i);
  return r;
}

inline double frobenius(const Mat& a) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

inline double max_abs(const Mat& a) {
  double m = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

// Gaussian elimination with partial pivoting. Returns det alongside inverse.
inline Mat inverse(const Mat& m, double* out_det = nullptr) {
  int n = m.dim();
  Mat a = m;
  Mat inv(n);
  for (int i = 0; i < n; ++i) inv(i, i) = 1.0;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
      det = -det;
    }
    double d = a(col, col);
    det *= d;
    if (d == 0.0) throw std::runtime_error("singular matrix");
    double id = 1.0 / d;
    for (int j = 0; j < n; ++j) {
      a(col, j) *= id;
      inv(col, j) *= id;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  if (out_det) *out_det = det;
  return inv;
}

inline double determinant(const Mat& m) {
  int n = m.dim();
  Mat a = m;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    if (a(col, col) == 0.0) return 0.0;
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

// Cyclic Jacobi for symmetric matrices; eigenvalues ascending, eigenvectors as columns.
inline void sym_eigen(const Mat& m, Vec& eigvals, Mat& eigvecs) {
  int n = m.dim();
  Mat a = m;
  Mat v(n);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  eigvals.assign(n, 0.0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(order[j], order[j]) < a(order[i], order[i])) std::swap(order[i], order[j]);
  eigvecs = Mat(n);
  for (int i = 0; i < n; ++i) {
    eigvals[i] = a(order[i], order[i]);
    for (int k = 0; k < n; ++k) eigvecs(k, i) = v(k, order[i]);
  }
}

inline double pivot_mag(double x) { return std::abs(x); }
inline double pivot_mag(const Jet& x) { return std::abs(x.value()); }

// Gauss-Jordan over any field-like scalar (double or Jet); pivots chosen by
// value magnitude.
template <class T>
Matrix<T> inverse_generic(const Matrix<T>& m) {
  int n = m.dim();
  Matrix<T> a = m;
  Matrix<T> inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = m(0, 0) * 0.0 + (i == j ? 1.0 : 0.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (pivot_mag(a(r, col)) > pivot_mag(a(piv, col))) piv = r;
    if (pivot_mag(a(piv, col)) == 0.0) throw std::runtime_error("singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T id = 1.0 / a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) *= id;
      inv(col, j) *= id;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = a(r, col);
      if (pivot_mag(f) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// adjugate, jet-friendly (polynomial in the entries); n in {1,2,3}
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  int n = m.dim();
  Matrix<T> r(n);
  if (n == 1) {
    r(0, 0) = m(0, 0) * 0.0 + 1.0;
  } else if (n == 2) {
    r(0, 0) = m(1, 1);
    r(1, 1) = m(0, 0);
    r(0, 1) = -m(0, 1);
    r(1, 0) = -m(1, 0);
  } else if (n == 3) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int i1 = (j + 1) % 3, i2 = (j + 2) % 3;  // adj = transpose of cofactors
        int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        r(i, j) = m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
      }
  } else {
    throw std::runtime_error("adjugate: unsupported dimension");
  }
  return r;
}

}  // namespace canvar
