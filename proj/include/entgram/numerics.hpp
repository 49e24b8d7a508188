#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace entgram {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Dimensions are strictly positive and all
/// entries are finite after construction.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> data() const noexcept { return data_; }

  std::vector<Complex> column(std::size_t j) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;

  ComplexMatrix& operator*=(Complex s);
  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |A_ij - conj(A_ji)|; requires a square matrix.
double hermitian_asymmetry(const ComplexMatrix& a);

/// max_ij |(A^H A - I)_ij|, the column-orthonormality defect.
double orthonormality_defect(const ComplexMatrix& a);

/// Inner product <x|y> = sum_k conj(x_k) y_k (conjugate-linear in the first slot).
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm_squared(std::span<const Complex> x);

/// Determinant by Laplace expansion. Exact in structure and only meant for
/// the small blocks used here (n <= 8).
Complex cofactor_determinant(const ComplexMatrix& a);

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // non-increasing
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix. Each
/// eigenvector is phased so its first nonzero entry is real and positive.
HermitianEigenResult eigh(const ComplexMatrix& a);

/// Lower-triangular B with G = B B^H. Pivots at or below the clamp threshold
/// are treated as zero and their column is zeroed, so semidefinite input is
/// accepted.
ComplexMatrix cholesky_psd(const ComplexMatrix& g);

/// Singular values of a d x N matrix (d <= N) by one-sided Jacobi
/// orthogonalization of its rows. Independent of eigh.
std::vector<double> singular_values(const ComplexMatrix& c);

/// Seeded random engine plus the few draws the library needs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Derives an independent child seed for stream `index` (splitmix64 mix).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Haar-distributed n x n unitary: Gram-Schmidt QR of a complex Gaussian
/// matrix with R's diagonal made real positive.
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace entgram
