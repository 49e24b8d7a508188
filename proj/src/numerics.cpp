#include "entgram/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "entgram/errors.hpp"
#include "entgram/tolerances.hpp"

namespace entgram {

namespace {

void require_finite(std::span<const Complex> entries) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
    }
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + " needs a square matrix, got " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()));
  }
}

// Sum of squared moduli strictly off the diagonal.
double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

// Makes the first entry of column j with modulus above 1e-12 real positive.
void fix_column_phase(ComplexMatrix& v, std::size_t j) {
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const double mag = std::abs(v(i, j));
    if (mag > 1e-12) {
      const Complex phase = std::conj(v(i, j)) / mag;
      for (std::size_t k = 0; k < v.rows(); ++k) v(k, j) *= phase;
      v(i, j) = Complex(v(i, j).real(), 0.0);
      return;
    }
  }
}

Complex laplace(const ComplexMatrix& a, std::vector<std::size_t>& cols, std::size_t row) {
  const std::size_t n = cols.size();
  if (n == 1) return a(row, cols[0]);
  if (n == 2) return a(row, cols[0]) * a(row + 1, cols[1]) - a(row, cols[1]) * a(row + 1, cols[0]);
  Complex det = 0.0;
  double sign = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t col = cols[k];
    const Complex pivot = a(row, col);
    if (pivot != Complex(0.0)) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      det += sign * pivot * laplace(a, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), col);
    }
    sign = -sign;
  }
  return det;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(rows * cols) +
                                              " entries, got " + std::to_string(data_.size()));
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
  }
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  require_finite(m.data());
  return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
  std::vector<Complex> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (Complex& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix sum of different shapes");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix difference of different shapes");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product with incompatible shapes");
  }
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Small helpers

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "frobenius_distance of different shapes");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
  return std::sqrt(s);
}

double hermitian_asymmetry(const ComplexMatrix& a) {
  require_square(a, "hermitian_asymmetry");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

double orthonormality_defect(const ComplexMatrix& a) {
  const ComplexMatrix gram = a.adjoint() * a;
  double worst = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "inner product lengths differ");
  Complex s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
  return s;
}

double norm_squared(std::span<const Complex> x) {
  double s = 0.0;
  for (const Complex& z : x) s += std::norm(z);
  return s;
}

Complex cofactor_determinant(const ComplexMatrix& a) {
  require_square(a, "cofactor_determinant");
  if (a.rows() > 8) {
    throw Error(ErrorCode::InvalidArgument, "cofactor expansion limited to n <= 8");
  }
  std::vector<std::size_t> cols(a.cols());
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return laplace(a, cols, 0);
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

HermitianEigenResult eigh(const ComplexMatrix& input) {
  require_square(input, "eigh");
  if (hermitian_asymmetry(input) > tol::kHermitian) {
    throw Error(ErrorCode::NotHermitian, "eigh input is not Hermitian");
  }
  const std::size_t n = input.rows();

  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = tol::kJacobiOffDiag * frobenius_norm(a);
  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < tol::kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Strip the phase of a_pq, then a real symmetric rotation zeroes it.
        const Complex phase = a(p, q) / r;
        const Complex back = std::conj(phase);
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * back * akq;
          a(k, q) = s * akp + c * back * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * back * vkq;
          v(k, q) = s * vkp + c * back * vkq;
        }
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi sweeps did not converge within " + std::to_string(tol::kMaxSweeps));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  HermitianEigenResult result{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, order[k]);
    fix_column_phase(result.eigenvectors, k);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Semidefinite Cholesky

ComplexMatrix cholesky_psd(const ComplexMatrix& g) {
  require_square(g, "cholesky_psd");
  if (hermitian_asymmetry(g) > tol::kHermitian) {
    throw Error(ErrorCode::NotHermitian, "cholesky_psd input is not Hermitian");
  }
  const std::size_t n = g.rows();
  ComplexMatrix b(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double pivot = g(k, k).real();
    for (std::size_t j = 0; j < k; ++j) pivot -= std::norm(b(k, j));
    if (pivot < -tol::kNegativePivot) {
      throw Error(ErrorCode::NotPSD, "negative pivot " + std::to_string(pivot) + " at index " +
                                         std::to_string(k));
    }
    if (pivot <= tol::kPivotClamp) continue;  // column k stays zero

    const double bkk = std::sqrt(pivot);
    b(k, k) = bkk;
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex s = g(i, k);
      for (std::size_t j = 0; j < k; ++j) s -= b(i, j) * std::conj(b(k, j));
      b(i, k) = s / bkk;
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi singular values

std::vector<double> singular_values(const ComplexMatrix& c) {
  if (c.rows() > c.cols()) {
    throw Error(ErrorCode::InvalidArgument, "singular_values expects rows <= cols");
  }
  const std::size_t d = c.rows();
  ComplexMatrix w = c;

  bool converged = false;
  for (int sweep = 0; sweep < tol::kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        auto ri = w.row(i);
        auto rj = w.row(j);
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;  // (W W^H)_ij
        for (std::size_t k = 0; k < ri.size(); ++k) {
          alpha += std::norm(ri[k]);
          beta += std::norm(rj[k]);
          gamma += ri[k] * std::conj(rj[k]);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= tol::kJacobiOffDiag * std::sqrt(alpha * beta)) continue;
        converged = false;

        const Complex unit = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double cs = 1.0 / std::hypot(1.0, t);
        const double sn = t * cs;
        for (std::size_t k = 0; k < ri.size(); ++k) {
          const Complex xi = ri[k];
          const Complex xj = rj[k];
          ri[k] = cs * xi - sn * unit * xj;
          rj[k] = sn * xi + cs * unit * xj;
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence, "one-sided Jacobi did not converge");
  }

  std::vector<double> sv(d);
  for (std::size_t i = 0; i < d; ++i) sv[i] = std::sqrt(norm_squared(w.row(i)));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

// ---------------------------------------------------------------------------
// Randomness

Complex Rng::complex_normal() {
  constexpr double kScale = 0.70710678118654752440;
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {kScale * re, kScale * im};
}

std::size_t Rng::index(std::size_t n) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "random_unitary needs n >= 1");
  Rng rng(seed);
  ComplexMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.complex_normal();

  // Modified Gram-Schmidt, two passes. R_jj is the (positive) column norm,
  // which is exactly the phase fix that makes Q Haar distributed.
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
  }
  return q;
}

}  // namespace entgram
