#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "adgame/common.hpp"

namespace adgame {

/// Dense row-major matrix. Everything in this project is small (a few
/// hundred rows at most), so the containers stay simple and the algorithms
/// favor robustness over asymptotic speed.
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw InvalidInput("Mat: negative dimension");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static Mat from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Mat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c)
        throw InvalidInput("Mat::from_rows: ragged rows");
      int j = 0;
      for (const T& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidInput("Mat::operator*: shape mismatch");
    Mat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T a = (*this)(i, k);
        if (a == T{}) continue;
        for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw InvalidInput("Mat::operator*: vector length mismatch");
    std::vector<T> out(rows_, T{});
    for (int i = 0; i < rows_; ++i) {
      T acc{};
      for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using MatD = Mat<double>;
using MatC = Mat<std::complex<double>>;

inline double max_abs_diff(const MatD& a, const MatD& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double max_abs(const MatD& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

/// LU factorization with partial pivoting. A pivot magnitude below
/// `pivot_tol` is reported as singularity; the grounded Laplacians handled
/// here are integer-structured, so anything near-singular is structurally
/// invalid rather than ill-conditioned.
template <typename T>
class LuFactorization {
 public:
  explicit LuFactorization(Mat<T> a, double pivot_tol = 1e-12) : lu_(std::move(a)) {
    if (lu_.rows() != lu_.cols()) throw InvalidInput("LU: matrix must be square");
    const int n = lu_.rows();
    perm_.resize(n);
    for (int i = 0; i < n; ++i) perm_[i] = i;
    for (int k = 0; k < n; ++k) {
      int piv = k;
      double best = std::abs(lu_(k, k));
      for (int i = k + 1; i < n; ++i) {
        const double cand = std::abs(lu_(i, k));
        if (cand > best) {
          best = cand;
          piv = i;
        }
      }
      if (best < pivot_tol)
        throw InvalidInput("LU: singular matrix (pivot below threshold)");
      if (piv != k) {
        std::swap(perm_[piv], perm_[k]);
        for (int j = 0; j < n; ++j) std::swap(lu_(piv, j), lu_(k, j));
      }
      for (int i = k + 1; i < n; ++i) {
        const T m = lu_(i, k) / lu_(k, k);
        lu_(i, k) = m;
        for (int j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
      }
    }
  }

  std::vector<T> solve(const std::vector<T>& b) const {
    const int n = lu_.rows();
    if (static_cast<int>(b.size()) != n) throw InvalidInput("LU::solve: size mismatch");
    std::vector<T> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
      x[i] /= lu_(i, i);
    }
    return x;
  }

  Mat<T> solve(const Mat<T>& b) const {
    const int n = lu_.rows();
    if (b.rows() != n) throw InvalidInput("LU::solve: size mismatch");
    Mat<T> x(n, b.cols());
    std::vector<T> col(n);
    for (int j = 0; j < b.cols(); ++j) {
      for (int i = 0; i < n; ++i) col[i] = b(i, j);
      const auto sol = solve(col);
      for (int i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    return x;
  }

  Mat<T> inverse() const { return solve(Mat<T>::identity(lu_.rows())); }

 private:
  Mat<T> lu_;
  std::vector<int> perm_;
};

/// Eigenvalues/eigenvectors of a real symmetric matrix by cyclic Jacobi
/// rotations. Unconditionally convergent and deterministic, which is all
/// these small matrices need. Eigenvalues are returned ascending; columns of
/// `vectors` (when requested) are the matching eigenvectors.
inline std::vector<double> symmetric_eigen(MatD a, MatD* vectors = nullptr) {
  if (a.rows() != a.cols()) throw InvalidInput("symmetric_eigen: square matrix required");
  const int n = a.rows();
  MatD v = MatD::identity(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * scale * n) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return eig[x] < eig[y]; });
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = eig[order[i]];
  if (vectors) {
    MatD vs(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
    *vectors = std::move(vs);
  }
  return sorted;
}

/// Largest singular value via a symmetric eigensolve of the Gram matrix
/// (the smaller of M^T M and M M^T).
inline double sigma_max(const MatD& m) {
  if (m.empty()) throw InvalidInput("sigma_max: empty matrix");
  const bool tall = m.rows() >= m.cols();
  const MatD g = tall ? m.transpose() * m : m * m.transpose();
  const auto eig = symmetric_eigen(g);
  return std::sqrt(std::max(0.0, eig.back()));
}

/// Largest singular value of a complex matrix. The Hermitian Gram matrix
/// G = M^H M is embedded as the real symmetric [[Re G, -Im G], [Im G, Re G]],
/// whose spectrum is that of G with doubled multiplicity.
inline double sigma_max(const MatC& m) {
  if (m.empty()) throw InvalidInput("sigma_max: empty matrix");
  const int q = m.cols();
  MatC g(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      std::complex<double> acc{0.0, 0.0};
      for (int k = 0; k < m.rows(); ++k) acc += std::conj(m(k, i)) * m(k, j);
      g(i, j) = acc;
    }
  MatD embed(2 * q, 2 * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      embed(i, j) = g(i, j).real();
      embed(i, j + q) = -g(i, j).imag();
      embed(i + q, j) = g(i, j).imag();
      embed(i + q, j + q) = g(i, j).real();
    }
  const auto eig = symmetric_eigen(embed);
  return std::sqrt(std::max(0.0, eig.back()));
}

}  // namespace adgame
