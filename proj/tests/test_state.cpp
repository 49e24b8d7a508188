#include <gtest/gtest.h>

#include <cmath>

#include "entgram/errors.hpp"
#include "entgram/gram.hpp"
#include "entgram/state.hpp"
#include "oracles.hpp"

using namespace entgram;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState bell() { return make_state(ComplexMatrix{{kInvSqrt2, 0.0}, {0.0, kInvSqrt2}}, false); }

PureState random_pure(std::size_t d, std::size_t n, std::uint64_t seed) {
  return make_state(oracle::random_matrix(d, n, seed), true);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(MakeState, BellLikeState) {
  const PureState s = bell();
  EXPECT_EQ(s.d(), 2u);
  EXPECT_EQ(s.trunc_dim(), 2u);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(MakeState, ProductStateWithSingleMode) {
  const Complex c[] = {1.0, 0.0};
  const PureState s = make_state(2, 1, c, true);
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
  EXPECT_DOUBLE_EQ(s.original_norm(), 1.0);
}

TEST(MakeState, HalfIdentityIsAlreadyNormalized) {
  const PureState s = make_state(0.5 * ComplexMatrix::identity(4), false);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(MakeState, NormalizeRescalesAndRecordsNorm) {
  const PureState s = make_state(ComplexMatrix{{3.0, 0.0}, {0.0, 4.0}}, true);
  EXPECT_DOUBLE_EQ(s.original_norm(), 5.0);
  EXPECT_NEAR(s.coeffs()(1, 1).real(), 0.8, 1e-15);
}

TEST(MakeState, Errors) {
  EXPECT_EQ(code_of([] { make_state(ComplexMatrix(2, 2), true); }), ErrorCode::ZeroState);
  EXPECT_EQ(code_of([] {
              const Complex c[] = {1.0, 0.0, 0.0};
              make_state(2, 2, c, true);
            }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([] { make_state(ComplexMatrix{{1.0}, {1.0}}, false); }),
            ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] { make_state(ComplexMatrix{{1.0, 0.0}}, true); }), ErrorCode::InvalidArgument);
}

TEST(MakeStateProperty, NormIsSumOfComponentNorms) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t d = 2 + seed % 4;
    const std::size_t n = 1 + seed % 9;
    const ComplexMatrix c = oracle::random_matrix(d, n, seed);
    double rows = 0.0;
    for (std::size_t i = 0; i < d; ++i) rows += norm_squared(c.row(i));
    const double f = frobenius_norm(c);
    EXPECT_NEAR(rows, f * f, 1e-12 * f * f);
    EXPECT_NEAR(make_state(c, true).norm_squared(), 1.0, 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Schmidt decomposition

TEST(Schmidt, BellLikeHasEqualCoefficients) {
  const SchmidtForm f = schmidt_decompose(bell());
  EXPECT_NEAR(f.coefficients[0], kInvSqrt2, 1e-15);
  EXPECT_NEAR(f.coefficients[1], kInvSqrt2, 1e-15);
  EXPECT_EQ(f.rank(), 2u);
}

TEST(Schmidt, ProductStateHasRankOne) {
  const PureState s = make_state(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, false);
  const SchmidtForm f = schmidt_decompose(s);
  EXPECT_DOUBLE_EQ(f.coefficients[0], 1.0);
  EXPECT_DOUBLE_EQ(f.coefficients[1], 0.0);
  EXPECT_EQ(f.rank(), 1u);
  EXPECT_LE(frobenius_distance(f.reconstruct(), s.coeffs()), 1e-15);
}

TEST(Schmidt, Seed5MatchesIndependentSvd) {
  const PureState s = random_pure(3, 16, 5);
  const SchmidtForm f = schmidt_decompose(s);
  const auto sv = singular_values(s.coeffs());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(f.coefficients[i], sv[i], 1e-8);
}

TEST(Schmidt, LeftVectorsFollowPhaseConvention) {
  const SchmidtForm f = schmidt_decompose(random_pure(3, 5, 8));
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (std::abs(f.left_vectors(i, k)) > 1e-12) {
        EXPECT_GT(f.left_vectors(i, k).real(), 0.0);
        EXPECT_EQ(f.left_vectors(i, k).imag(), 0.0);
        break;
      }
    }
  }
}

TEST(SchmidtProperty, InvariantsOnRandomStates) {
  for (std::size_t d = 2; d <= 5; ++d) {
    for (std::size_t n : {1ul, d - 1, d, 2 * d, 32ul}) {
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const PureState s = random_pure(d, n, 100 * d + 10 * n + seed);
        const SchmidtForm f = schmidt_decompose(s);

        double sq = 0.0;
        for (double c : f.coefficients) sq += c * c;
        EXPECT_NEAR(sq, s.norm_squared(), 1e-10);
        EXPECT_TRUE(std::is_sorted(f.coefficients.rbegin(), f.coefficients.rend()));
        EXPECT_LE(orthonormality_defect(f.left_vectors), 1e-10);
        EXPECT_LE(orthonormality_defect(f.right_vectors.adjoint()), 1e-8);
        EXPECT_LE(frobenius_distance(f.reconstruct(), s.coeffs()), 1e-8);
        EXPECT_EQ(f.rank(), std::min(d, n));
        EXPECT_EQ(f.rank(), rank(gram_from_state(s)));
      }
    }
  }
}

TEST(SchmidtProperty, RankDeficientStatesMatchGramRank) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    // d = 4 components drawn from a 2-dimensional subspace of h
    const ComplexMatrix mix = oracle::random_matrix(4, 2, seed);
    const ComplexMatrix basis = oracle::random_matrix(2, 10, seed + 500);
    const PureState s = make_state(mix * basis, true);
    const SchmidtForm f = schmidt_decompose(s);
    EXPECT_EQ(f.rank(), 2u);
    EXPECT_EQ(rank(gram_from_state(s)), 2u);
    EXPECT_LE(frobenius_distance(f.reconstruct(), s.coeffs()), 1e-8);
  }
}

// ---------------------------------------------------------------------------
// apply_right_unitary

TEST(ApplyRightUnitary, IdentityLeavesStateUnchanged) {
  const PureState s = random_pure(3, 4, 1);
  const PureState t = apply_right_unitary(s, ComplexMatrix::identity(4));
  EXPECT_EQ(t.coeffs(), s.coeffs());
}

TEST(ApplyRightUnitary, PreservesNorm) {
  const PureState s = random_pure(3, 6, 2);
  const PureState t = apply_right_unitary(s, random_unitary(6, 3));
  EXPECT_NEAR(t.norm_squared(), 1.0, 1e-12);
}

TEST(ApplyRightUnitary, ActsOnTheSecondFactor) {
  // Swap f1 <-> f2 on e1 (x) f1: the result is e1 (x) f2.
  const PureState s = make_state(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, false);
  const ComplexMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
  const PureState t = apply_right_unitary(s, swap);
  EXPECT_EQ(t.coeffs(), (ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}));
}

TEST(ApplyRightUnitary, Errors) {
  const PureState s = bell();
  EXPECT_EQ(code_of([&] { apply_right_unitary(s, ComplexMatrix::identity(3)); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { apply_right_unitary(s, ComplexMatrix{{1.0, 0.1}, {0.0, 1.0}}); }),
            ErrorCode::NotUnitary);
}
