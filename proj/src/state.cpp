#include "entgram/state.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <string>

#include "entgram/errors.hpp"
#include "entgram/tolerances.hpp"

namespace entgram {

double PureState::norm_squared() const {
  double total = 0.0;
  for (std::size_t i = 0; i < d(); ++i) total += entgram::norm_squared(component(i));
  return total;
}

PureState make_state(ComplexMatrix coeffs, bool normalize) {
  if (coeffs.rows() < 2) {
    throw Error(ErrorCode::InvalidArgument, "d must be at least 2, got " + std::to_string(coeffs.rows()));
  }
  const double norm = frobenius_norm(coeffs);
  if (norm < tol::kZeroState) {
    throw Error(ErrorCode::ZeroState, "state norm " + std::to_string(norm) + " is degenerate");
  }
  if (normalize) {
    coeffs *= Complex(1.0 / norm);
  } else if (std::abs(norm * norm - 1.0) > tol::kNormalized) {
    throw Error(ErrorCode::NotNormalized,
                "squared norm deviates from 1 by " + std::to_string(std::abs(norm * norm - 1.0)));
  }
  return PureState(std::move(coeffs), norm);
}

PureState make_state(std::size_t d, std::size_t trunc_dim, std::span<const Complex> coeffs,
                     bool normalize) {
  if (d == 0 || trunc_dim == 0 || coeffs.size() != d * trunc_dim) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(d) + "x" +
                                              std::to_string(trunc_dim) + " coefficients, got " +
                                              std::to_string(coeffs.size()));
  }
  return make_state(ComplexMatrix(d, trunc_dim, {coeffs.begin(), coeffs.end()}), normalize);
}

ComplexMatrix SchmidtForm::reconstruct() const {
  const std::size_t d = left_vectors.rows();
  const std::size_t n = right_vectors.cols();
  ComplexMatrix out(d, n);
  for (std::size_t l = 0; l < rank(); ++l) {
    for (std::size_t i = 0; i < d; ++i) {
      const Complex weight = coefficients[l] * left_vectors(i, l);
      for (std::size_t k = 0; k < n; ++k) out(i, k) += weight * right_vectors(l, k);
    }
  }
  return out;
}

SchmidtForm schmidt_decompose(const PureState& state) {
  const ComplexMatrix& c = state.coeffs();
  // rho = C C^H; its eigenvectors are the left Schmidt vectors and its
  // spectrum coincides with that of the Gram matrix (which is rho^T).
  const ComplexMatrix rho = c * c.adjoint();
  HermitianEigenResult eig = eigh(rho);

  // Unnormalized right vectors sum_j conj(e^_l)_j psi_j. Their norms are the
  // Schmidt coefficients; taking them directly avoids the sqrt of a rounding
  // residue in the null space of rho.
  const std::size_t d = state.d();
  const std::size_t n = state.trunc_dim();
  ComplexMatrix projected(d, n);
  std::vector<double> norms(d);
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t j = 0; j < d; ++j) {
      const Complex w = std::conj(eig.eigenvectors(j, l));
      const auto psi = state.component(j);
      for (std::size_t k = 0; k < n; ++k) projected(l, k) += w * psi[k];
    }
    norms[l] = std::sqrt(norm_squared(projected.row(l)));
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  std::vector<double> coefficients(d);
  ComplexMatrix left(d, d);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < d; ++i) {
    coefficients[i] = norms[order[i]];
    for (std::size_t j = 0; j < d; ++j) left(j, i) = eig.eigenvectors(j, order[i]);
    if (coefficients[i] > tol::kSchmidtPositive) ++rank;
  }
  if (rank == 0) throw Error(ErrorCode::ZeroState, "state has no Schmidt coefficient above cutoff");

  // f^_l = (1/s_l) sum_j conj(e^_l)_j psi_j
  ComplexMatrix right(rank, n);
  for (std::size_t l = 0; l < rank; ++l) {
    const auto src = projected.row(order[l]);
    for (std::size_t k = 0; k < n; ++k) right(l, k) = src[k] / coefficients[l];
  }
  return SchmidtForm{std::move(coefficients), std::move(left), std::move(right)};
}

PureState apply_right_unitary(const PureState& state, const ComplexMatrix& u) {
  if (!u.is_square() || u.rows() != state.trunc_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "unitary must be " + std::to_string(state.trunc_dim()) + "x" +
                    std::to_string(state.trunc_dim()));
  }
  if (frobenius_distance(u.adjoint() * u, ComplexMatrix::identity(u.rows())) > tol::kUnitary) {
    throw Error(ErrorCode::NotUnitary, "matrix is not unitary within tolerance");
  }
  // U f_k = sum_m U_mk f_m, so c'_im = sum_k U_mk c_ik, i.e. C' = C U^T.
  return PureState(state.coeffs() * u.transpose(), state.original_norm());
}

}  // namespace entgram
