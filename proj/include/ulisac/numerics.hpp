#pragma once

/**
 * @file numerics.hpp
 * @brief Self-contained dense complex linear algebra: Hermitian eigendecomposition,
 *        SVD of general complex matrices, and the row-vector pseudo-inverse.
 *
 * Everything here is deterministic and allocation-simple; matrices at the
 * scales used by the estimation pipeline stay below 256x256, so O(n^3)
 * Jacobi-type methods are used throughout.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ulisac::numerics {

using Complex = std::complex<double>;

/**
 * @brief Dense complex matrix, row-major storage.
 *
 * The checked constructor rejects non-finite entries; the (rows, cols)
 * constructor zero-fills and is used on hot paths.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
    }
    if (!is_finite()) {
      throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::vector<Complex>& data() { return entries_; }
  const std::vector<Complex>& data() const { return entries_; }

  Complex* row_ptr(std::size_t i) { return entries_.data() + i * cols_; }
  const Complex* row_ptr(std::size_t i) const { return entries_.data() + i * cols_; }

  bool is_finite() const {
    for (const Complex& z : entries_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (const Complex& z : entries_) s = std::max(s, std::abs(z));
    return s;
  }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(std::size_t j, const std::vector<Complex>& c) {
    if (c.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = b.row_ptr(k);
      Complex* orow = out.row_ptr(i);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

inline std::vector<Complex> multiply(const ComplexMatrix& a, const std::vector<Complex>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("multiply: vector length mismatch");
  std::vector<Complex> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    const Complex* row = a.row_ptr(i);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

inline ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("subtract: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

inline double vector_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline Complex dot_conj(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

/// Eigenvalues sorted descending; columns of `vectors` are the matching
/// unit-norm eigenvectors.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Thin SVD: `left` (m x k) and `right` (n x k) have orthonormal columns,
/// k = min(m, n), singular values sorted descending.
struct SingularDecomposition {
  ComplexMatrix left;
  std::vector<double> singulars;
  ComplexMatrix right;
};

namespace detail {

// Complex Jacobi rotation parameters that zero the (p,q) off-diagonal of a
// Hermitian 2x2 block [[app, apq], [conj(apq), aqq]].  The rotation matrix is
//   J = [[c, s], [-conj(s), c]],  c real, |s|^2 + c^2 = 1,  applied as J^H A J.
struct JacobiRotation {
  double c = 1.0;
  Complex s{};
  double t = 0.0;  // tangent of the rotation angle (real)
};

inline JacobiRotation make_rotation(double app, double aqq, Complex apq) {
  JacobiRotation rot;
  const double off = std::abs(apq);
  if (off == 0.0) return rot;
  const Complex phase = apq / off;
  const double tau = (aqq - app) / (2.0 * off);
  double t;
  if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  rot.c = 1.0 / std::sqrt(1.0 + t * t);
  rot.s = rot.c * t * phase;
  rot.t = t;
  return rot;
}

// Applies B <- B J on columns p, q (used for both eigenvector accumulation and
// one-sided SVD column updates).
inline void rotate_columns(ComplexMatrix& b, std::size_t p, std::size_t q,
                           const JacobiRotation& rot) {
  const Complex s_conj = std::conj(rot.s);
  for (std::size_t k = 0; k < b.rows(); ++k) {
    Complex* row = b.row_ptr(k);
    const Complex bp = row[p];
    const Complex bq = row[q];
    row[p] = rot.c * bp - s_conj * bq;
    row[q] = rot.s * bp + rot.c * bq;
  }
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

// Descending sort order with index tie-break, for deterministic output.
inline std::vector<std::size_t> descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

}  // namespace detail

/**
 * @brief Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
 *
 * Requires a square input with ||A - A^H||_F <= 1e-12 * ||A||_F; throws
 * std::invalid_argument otherwise.  Eigenvalues are returned descending with
 * ties broken by original index.
 */
inline EigenDecomposition hermitian_evd(const ComplexMatrix& a) {
  if (a.empty()) throw std::invalid_argument("hermitian_evd: empty matrix");
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_evd: matrix not square");
  const std::size_t n = a.rows();

  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
  const double scale = a.max_abs();
  if (scale > 0.0 && dev > 1e-12 * scale) {
    throw std::invalid_argument("hermitian_evd: matrix not Hermitian");
  }

  // Work on the exactly Hermitian part.
  ComplexMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    w(i, i) = Complex(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      w(i, j) = z;
      w(j, i) = std::conj(z);
    }
  }

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm = std::max(w.frobenius_norm(), 1e-300);
  const double tol = 1e-14 * norm;
  const std::size_t max_sweeps = 48;

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    if (detail::off_diagonal_norm(w) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = w(p, q);
        const double off = std::abs(apq);
        if (off <= 1e-300) continue;
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const auto rot = detail::make_rotation(app, aqq, apq);
        const Complex s_conj = std::conj(rot.s);

        // Columns p, q of W, then restore Hermitian symmetry on rows.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex wkp = w(k, p);
          const Complex wkq = w(k, q);
          w(k, p) = rot.c * wkp - s_conj * wkq;
          w(k, q) = rot.s * wkp + rot.c * wkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          w(p, k) = std::conj(w(k, p));
          w(q, k) = std::conj(w(k, q));
        }
        w(p, p) = Complex(app - rot.t * off, 0.0);
        w(q, q) = Complex(aqq + rot.t * off, 0.0);
        w(p, q) = Complex{};
        w(q, p) = Complex{};

        detail::rotate_columns(v, p, q, rot);
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = w(i, i).real();
  const auto order = detail::descending_order(values);

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = values[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

/**
 * @brief Thin SVD of a general complex matrix by one-sided Jacobi.
 *
 * Wide inputs are handled by decomposing the adjoint and swapping factors.
 * Columns of `left`/`right` associated with (numerically) zero singular values
 * are completed to an orthonormal set from the standard basis.
 */
inline SingularDecomposition svd(const ComplexMatrix& a) {
  if (a.empty()) throw std::invalid_argument("svd: empty matrix");

  const bool wide = a.rows() < a.cols();
  ComplexMatrix b = wide ? a.adjoint() : a;
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();

  ComplexMatrix v = ComplexMatrix::identity(n);

  const std::size_t max_sweeps = 60;
  const double tol = 1e-13;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double gpp = 0.0, gqq = 0.0;
        Complex gpq{};
        for (std::size_t k = 0; k < m; ++k) {
          const Complex bp = b(k, p);
          const Complex bq = b(k, q);
          gpp += std::norm(bp);
          gqq += std::norm(bq);
          gpq += std::conj(bp) * bq;
        }
        if (gpp == 0.0 || gqq == 0.0) continue;
        if (std::abs(gpq) <= tol * std::sqrt(gpp * gqq)) continue;
        const auto rot = detail::make_rotation(gpp, gqq, gpq);
        detail::rotate_columns(b, p, q, rot);
        detail::rotate_columns(v, p, q, rot);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(b(k, j));
    sig[j] = std::sqrt(s);
  }
  const auto order = detail::descending_order(sig);

  ComplexMatrix u_thin(m, n);
  ComplexMatrix v_thin(n, n);
  std::vector<double> singulars(n);
  const double sig_max = sig.empty() ? 0.0 : sig[order[0]];
  const double zero_cut = sig_max * 1e-13;

  std::vector<bool> filled(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    singulars[j] = sig[src];
    for (std::size_t i = 0; i < n; ++i) v_thin(i, j) = v(i, src);
    if (sig[src] > zero_cut && sig[src] > 0.0) {
      const double inv = 1.0 / sig[src];
      for (std::size_t k = 0; k < m; ++k) u_thin(k, j) = b(k, src) * inv;
      filled[j] = true;
    }
  }

  // Complete left columns for zero singular values: orthonormalize standard
  // basis seeds against everything already placed.
  std::size_t seed = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (filled[j]) continue;
    bool placed = false;
    while (seed < m && !placed) {
      std::vector<Complex> cand(m);
      cand[seed] = 1.0;
      ++seed;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t col = 0; col < n; ++col) {
          if (!filled[col]) continue;
          Complex proj{};
          for (std::size_t k = 0; k < m; ++k) proj += std::conj(u_thin(k, col)) * cand[k];
          for (std::size_t k = 0; k < m; ++k) cand[k] -= proj * u_thin(k, col);
        }
      }
      const double nrm = vector_norm(cand);
      if (nrm > 0.5) {
        for (std::size_t k = 0; k < m; ++k) u_thin(k, j) = cand[k] / nrm;
        filled[j] = true;
        placed = true;
      }
    }
    if (!placed) throw std::runtime_error("svd: failed to complete orthonormal basis");
  }

  SingularDecomposition out;
  if (wide) {
    out.left = std::move(v_thin);
    out.right = std::move(u_thin);
  } else {
    out.left = std::move(u_thin);
    out.right = std::move(v_thin);
  }
  out.singulars = std::move(singulars);
  return out;
}

/**
 * @brief Minimum-norm right inverse of a nonzero row vector: x = conj(v)^T / ||v||^2,
 *        so that v . x = 1.
 */
inline std::vector<Complex> row_pinv(const std::vector<Complex>& v) {
  double energy = 0.0;
  for (const Complex& z : v) energy += std::norm(z);
  if (energy == 0.0) throw std::invalid_argument("row_pinv: zero vector");
  std::vector<Complex> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::conj(v[i]) / energy;
  return x;
}

}  // namespace ulisac::numerics
