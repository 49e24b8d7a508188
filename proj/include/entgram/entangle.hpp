#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "entgram/gram.hpp"
#include "entgram/numerics.hpp"
#include "entgram/state.hpp"

namespace entgram {

enum class LogBase { natural, two };

std::string_view to_string(LogBase base) noexcept;  // "e" or "2"
/// log d in the requested base.
double max_entropy(std::size_t d, LogBase base = LogBase::natural);

/// -sum lambda log lambda with 0 log 0 = 0. Eigenvalues in [-1e-10, 0) are
/// clamped to zero; anything more negative throws NegativeEigenvalue.
double entropy_of_spectrum(std::span<const double> eigenvalues, LogBase base = LogBase::natural);

/// Entropy of a unit-trace Gram matrix. Throws TraceNotOne.
double entropy(const GramMatrix& g, LogBase base = LogBase::natural);

/// Root-sum-square of G - I/d over the upper triangle including the diagonal.
/// Off-diagonal pairs are counted once, so this is not ||G - I/d||_F.
double deviation(const ComplexMatrix& g);
double deviation(const GramMatrix& g);

/// Largest deviation any unit-trace PSD d x d matrix can have,
/// sqrt((d - 1) / d), attained at rank-one diagonal matrices.
double max_deviation(std::size_t d);

/// G = [[p, sigma], [conj(sigma), 1 - p]] with p = ||f1||^2, sigma = <f1|f2>.
/// Only |sigma| enters the spectrum.
struct D2Params {
  double p = 0.5;
  Complex sigma = 0.0;
};

/// Eigenvalues ((1 - sqrt(D))/2, (1 + sqrt(D))/2) with D = 1 - 4(p - p^2 - |sigma|^2).
/// Throws InfeasibleParams outside |sigma|^2 <= p(1 - p).
std::pair<double, double> d2_closed_form(const D2Params& params);

struct EntanglementReport {
  double entropy = 0.0;
  double max_entropy = 0.0;
  LogBase base = LogBase::natural;
  double deviation = 0.0;
  std::vector<double> spectrum;  // non-increasing
  std::size_t schmidt_rank = 0;
  bool maximal = false;          // deviation <= 1e-10
};

EntanglementReport analyze(const PureState& state, LogBase base = LogBase::natural);

}  // namespace entgram
