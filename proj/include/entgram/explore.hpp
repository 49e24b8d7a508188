#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entgram/entangle.hpp"
#include "entgram/gram.hpp"
#include "entgram/state.hpp"

namespace entgram {

// ---------------------------------------------------------------------------
// Parameter scans

/// Placement families for the 4x4 scans. The diagonal is fixed at 1/4 and the
/// three real parameters are written into the strict upper triangle:
///   A: s1@(1,2) s2@(1,3) s3@(1,4)
///   B: s1@(1,2) s2@(2,3) s3@(3,4)
///   C: s1@{(1,2),(3,4)} s2@{(1,3),(2,4)} s3@{(1,4),(2,3)}
///   D: (1,2),(1,3),(1,4),(2,3),(2,4),(3,4) <- (s1,s2,s3,s1,s2,s3)
///   E: s1@(1,2) only
///   F: as A, with s2 held at a fixed value
enum class Family { A, B, C, D, E, F };

Family parse_family(std::string_view name);  // throws UnknownFamily
std::string_view to_string(Family family) noexcept;

/// Hermitian 4x4 candidate of a family (not necessarily PSD).
ComplexMatrix d4_candidate(Family family, double sigma1, double sigma2, double sigma3);

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  double value(std::size_t i) const;
};

/// Cartesian grid; the first axis varies slowest. Parameters a family uses
/// but that have no axis take their value from `fixed` (default 0).
struct ScanGrid {
  std::vector<Axis> axes;
  std::optional<Family> family;
  std::map<std::string, double> fixed;

  /// Throws InvalidArgument when a count is below 2 or min >= max.
  void validate() const;
  std::size_t size() const;
};

struct ScanPoint {
  std::vector<double> params;  // in ScanResult::columns order
  bool feasible = false;
  std::optional<double> entropy;
  std::optional<double> deviation;
};

struct ScanResult {
  ScanGrid grid;
  std::size_t d = 2;
  LogBase base = LogBase::natural;
  std::vector<std::string> columns;  // {"p","sigma"} or {"p","sigma1","sigma2","sigma3"}
  std::vector<ScanPoint> points;     // grid order

  /// First feasible point of maximal entropy.
  std::optional<std::size_t> argmax() const;
};

/// d = 2 scan over axes "p" and "sigma" (= |sigma|). Entropy comes from the
/// closed-form eigenvalues; points with sigma^2 > p(1 - p) are flagged.
ScanResult scan_d2(const ScanGrid& grid, LogBase base = LogBase::natural);

/// d = 4 scan over "sigma1".."sigma3" for grid.family; feasibility is the
/// full principal-minor membership test. Throws UnknownFamily when no family.
ScanResult scan_d4(const ScanGrid& grid, LogBase base = LogBase::natural);

// ---------------------------------------------------------------------------
// Sampling

/// Complex Gaussian coefficients normalized onto the unit sphere.
PureState random_state(std::size_t d, std::size_t trunc_dim, std::uint64_t seed);

enum class GramSampling { interior, boundary_biased };

/// Trace-normalized B B^H for a random lower-triangular complex Gaussian B.
/// boundary_biased zeroes one diagonal entry of B, so the rank drops.
GramMatrix random_gram(std::size_t d, std::uint64_t seed,
                       GramSampling mode = GramSampling::interior);

// ---------------------------------------------------------------------------
// Constrained maximization and the verification harness

struct MaximizeResult {
  GramMatrix gram;
  double entropy = 0.0;
  double deviation = 0.0;
  std::size_t best_restart = 0;
  std::size_t iterations = 0;      // ascent steps summed over restarts
  double final_penalty = 0.0;      // penalty weight of the best restart
  std::vector<double> restart_entropies;
};

/// Maximizes entropy over unit-trace d x d Gram matrices with deviation >=
/// epsilon. The search runs over Cholesky-factor entries (PSD by
/// construction) with a doubling quadratic penalty on the constraint.
/// Throws InfeasibleConstraint when epsilon exceeds max_deviation(d).
MaximizeResult maximize_entropy(std::size_t d, double epsilon, std::size_t restarts,
                                std::uint64_t seed);

struct FrontierBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  std::optional<double> max_entropy;
};

struct VerifyReport {
  std::size_t d = 2;
  std::size_t samples = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double log_d = 0.0;
  bool constrained_set_empty = false;
  std::size_t samples_above_epsilon = 0;
  std::optional<double> sample_max_entropy;     // over samples with deviation >= epsilon
  std::optional<double> max_entropy;            // best of samples and optimizer
  std::optional<double> gap;                    // log d - max_entropy
  std::vector<FrontierBin> frontier;            // over [0, max_deviation(d)]
  std::optional<MaximizeResult> optimizer;
  std::size_t optimizer_restarts = 0;
  std::size_t violations = 0;
};

/// Samples random Gram matrices, bins their (deviation, entropy) frontier,
/// runs the constrained maximizer and counts points with deviation >= epsilon
/// whose entropy still reaches log d (within 1e-9). Entropy is in nats.
VerifyReport verify_conjecture(std::size_t d, std::size_t samples, double epsilon,
                               std::uint64_t seed, std::size_t optimizer_restarts,
                               std::size_t frontier_bins = 20);

}  // namespace entgram
