#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "entgram/numerics.hpp"

namespace entgram {

/// Pure state Psi = sum_i e_i (x) psi_i of C^d (x) h, with h truncated to
/// dimension N. Row i of the d x N coefficient matrix holds psi_i in the
/// basis (f_j). The coefficient matrix is also the operator C^d -> h that
/// sends e_i to psi_i.
class PureState {
 public:
  std::size_t d() const noexcept { return coeffs_.rows(); }
  std::size_t trunc_dim() const noexcept { return coeffs_.cols(); }
  const ComplexMatrix& coeffs() const noexcept { return coeffs_; }
  std::span<const Complex> component(std::size_t i) const { return coeffs_.row(i); }

  /// Norm of the input before rescaling. Every PureState has unit norm.
  double original_norm() const noexcept { return original_norm_; }
  /// ||Psi||^2 = sum_i ||psi_i||^2.
  double norm_squared() const;

 private:
  PureState(ComplexMatrix coeffs, double original_norm)
      : coeffs_(std::move(coeffs)), original_norm_(original_norm) {}

  ComplexMatrix coeffs_;
  double original_norm_;

  friend PureState make_state(ComplexMatrix coeffs, bool normalize);
  friend PureState apply_right_unitary(const PureState& state, const ComplexMatrix& u);
};

/// Validates a d x N coefficient matrix. With `normalize` the state is
/// rescaled to unit norm; without it the norm must already be 1.
/// Throws ZeroState, NotNormalized, InvalidArgument (d < 2).
PureState make_state(ComplexMatrix coeffs, bool normalize);

/// Row-major flat coefficients; throws ShapeMismatch when the size is not d*N.
PureState make_state(std::size_t d, std::size_t trunc_dim, std::span<const Complex> coeffs,
                     bool normalize);

struct SchmidtForm {
  std::vector<double> coefficients;  // non-increasing, length d
  ComplexMatrix left_vectors;        // d x d, column i is e^_i
  ComplexMatrix right_vectors;       // r x N, row i is f^_i for coefficients above the cutoff

  std::size_t rank() const noexcept { return right_vectors.rows(); }
  /// Coefficient matrix of sum_i s_i e^_i (x) f^_i.
  ComplexMatrix reconstruct() const;
};

/// Schmidt decomposition from the eigensystem of the reduced matrix C C^H.
SchmidtForm schmidt_decompose(const PureState& state);

/// (I (x) U) Psi for an N x N unitary U acting on the truncated factor.
PureState apply_right_unitary(const PureState& state, const ComplexMatrix& u);

}  // namespace entgram
