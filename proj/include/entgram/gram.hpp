#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "entgram/numerics.hpp"
#include "entgram/state.hpp"
#include "entgram/tolerances.hpp"

namespace entgram {

/// Hermitian positive-semidefinite matrix of pairwise inner products,
/// G_ij = <omega_i|omega_j> with the bra conjugated. Construction checks the
/// Hermitian and PSD tolerances; any value of this type satisfies both.
class GramMatrix {
 public:
  /// Validates an arbitrary matrix. Throws ShapeMismatch, NotHermitian, NotPSD.
  explicit GramMatrix(ComplexMatrix entries);

  std::size_t d() const noexcept { return entries_.rows(); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  double trace() const { return entries_.trace().real(); }

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  ComplexMatrix entries_;
};

/// G(Psi)_ij = <psi_i|psi_j>; unit trace for every PureState.
GramMatrix gram_from_state(const PureState& state);

/// Gram matrix of an arbitrary finite family; no trace normalization.
GramMatrix gram_from_vectors(std::span<const std::vector<Complex>> vectors);

/// Number of eigenvalues above `tolerance`; the dimension of the span of any
/// generating family.
std::size_t rank(const GramMatrix& g, double tolerance = tol::kRank);

/// Rows of the semidefinite Cholesky factor B of G = B B^H: d vectors in C^d
/// whose Gram matrix is G.
std::vector<std::vector<Complex>> realize(const GramMatrix& g);

/// ||before - after||_F within the invariance tolerance. Throws DimensionMismatch.
bool is_invariant_under(const GramMatrix& before, const GramMatrix& after);

/// Worst violation of |G_ij|^2 <= G_ii G_jj, as max(|G_ij|^2 - G_ii G_jj, 0).
double cauchy_schwarz_excess(const ComplexMatrix& g);

struct PrincipalMinor {
  std::vector<std::size_t> indices;  // 1-based, increasing
  double value;
};

/// All 2^d - 1 principal minors of a Hermitian matrix, leading minors first
/// (largest to smallest), then every other index subset by size descending.
std::vector<PrincipalMinor> principal_minors(const ComplexMatrix& g);

/// Constraint identifiers: "trace", "diagonal-range", and "minor{i,j,...}".
struct G4Verdict {
  bool member = true;
  std::vector<std::string> failed_constraints;
};

/// Membership in the unit-trace 4x4 Gram set, certifying PSD through all 15
/// principal minors. Throws ShapeMismatch, NotHermitian.
G4Verdict check_g4_membership(const ComplexMatrix& g);

/// The weaker test that only looks at det G and the leading 3x3 and 2x2
/// minors besides trace and diagonal range. It accepts some indefinite
/// matrices; kept to show that the full minor set is needed.
G4Verdict check_g4_leading_minors(const ComplexMatrix& g);

std::string minor_label(std::span<const std::size_t> indices);

}  // namespace entgram
