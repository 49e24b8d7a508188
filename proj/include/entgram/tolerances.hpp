#pragma once

// Single table of numerical thresholds. Nothing else in the library hard-codes
// a tolerance.

namespace entgram::tol {

// numerics
inline constexpr double kHermitian = 1e-12;         // max |A_ij - conj(A_ji)|
inline constexpr double kOrtho = 1e-10;             // max |V^H V - I|
inline constexpr double kReconstruction = 1e-10;    // relative Frobenius residual
inline constexpr double kJacobiOffDiag = 1e-13;     // off(A) / ||A||_F at convergence
inline constexpr int kMaxSweeps = 100;
inline constexpr double kPivotClamp = 1e-12;        // Cholesky pivots at or below are zero
inline constexpr double kNegativePivot = 1e-10;     // Cholesky pivots below -this are fatal
inline constexpr double kUnitary = 1e-10;           // ||U^H U - I||_F

// state
inline constexpr double kNormalized = 1e-12;        // | ||Psi||^2 - 1 |
inline constexpr double kZeroState = 1e-14;         // ||Psi|| below this is degenerate
inline constexpr double kSchmidtPositive = 1e-10;   // coefficients above carry a right vector

// gram
inline constexpr double kPsd = 1e-10;               // smallest admissible eigenvalue is -kPsd
inline constexpr double kUnitTrace = 1e-12;
inline constexpr double kCauchySchwarz = 1e-12;
inline constexpr double kRank = 1e-10;
inline constexpr double kInvariance = 1e-10;
inline constexpr double kG4Trace = 1e-10;
inline constexpr double kMinor = 1e-10;             // principal minors >= -kMinor

// entangle
inline constexpr double kEntropyTrace = 1e-10;
inline constexpr double kLogZero = 1e-14;           // eigenvalues at or below contribute 0
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kMaximal = 1e-10;           // deviation at or below is maximal
inline constexpr double kD2Feasible = 1e-12;        // |sigma|^2 <= p(1-p) + this
inline constexpr double kD2Boundary = 1e-12;

// explore
inline constexpr double kViolation = 1e-9;          // entropy >= log d - this counts as maximal
inline constexpr double kConstraint = 1e-9;         // deviation >= eps - this is accepted
inline constexpr double kAscentImprovement = 1e-12;
inline constexpr int kAscentIterations = 10000;
inline constexpr double kPenaltyStart = 10.0;
inline constexpr double kPenaltyCap = 1e6;

}  // namespace entgram::tol
