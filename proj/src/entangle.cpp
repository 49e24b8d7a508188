#include "entgram/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entgram/errors.hpp"
#include "entgram/tolerances.hpp"

namespace entgram {

namespace {

double log_in(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

}  // namespace

std::string_view to_string(LogBase base) noexcept {
  return base == LogBase::natural ? "e" : "2";
}

double max_entropy(std::size_t d, LogBase base) {
  return log_in(static_cast<double>(d), base);
}

double entropy_of_spectrum(std::span<const double> eigenvalues, LogBase base) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -tol::kNegativeEigenvalue) {
      throw Error(ErrorCode::NegativeEigenvalue, "eigenvalue " + std::to_string(lambda));
    }
    if (lambda <= tol::kLogZero) continue;
    s -= lambda * log_in(lambda, base);
  }
  // eigenvalues a hair above 1 give a rounding-level negative sum
  return std::max(s, 0.0);
}

double entropy(const GramMatrix& g, LogBase base) {
  const double t = g.trace();
  if (std::abs(t - 1.0) > tol::kEntropyTrace) {
    throw Error(ErrorCode::TraceNotOne, "trace is " + std::to_string(t));
  }
  return entropy_of_spectrum(eigh(g.entries()).eigenvalues, base);
}

double deviation(const ComplexMatrix& g) {
  if (!g.is_square()) throw Error(ErrorCode::ShapeMismatch, "deviation needs a square matrix");
  const std::size_t d = g.rows();
  const double diag = 1.0 / static_cast<double>(d);
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    s += std::norm(g(i, i) - diag);
    for (std::size_t j = i + 1; j < d; ++j) s += std::norm(g(i, j));
  }
  return std::sqrt(s);
}

double deviation(const GramMatrix& g) { return deviation(g.entries()); }

double max_deviation(std::size_t d) {
  return std::sqrt(static_cast<double>(d - 1) / static_cast<double>(d));
}

std::pair<double, double> d2_closed_form(const D2Params& params) {
  const double p = params.p;
  const double s2 = std::norm(params.sigma);
  if (!(p >= 0.0 && p <= 1.0) || s2 > p * (1.0 - p) + tol::kD2Feasible) {
    throw Error(ErrorCode::InfeasibleParams,
                "p = " + std::to_string(p) + ", |sigma|^2 = " + std::to_string(s2));
  }
  double delta = 1.0 - 4.0 * (p - p * p - s2);
  if (delta < 0.0 && delta > -tol::kD2Boundary) delta = 0.0;
  if (delta > 1.0 && delta < 1.0 + 4.0 * tol::kD2Boundary) delta = 1.0;
  const double root = std::sqrt(delta);
  return {(1.0 - root) / 2.0, (1.0 + root) / 2.0};
}

EntanglementReport analyze(const PureState& state, LogBase base) {
  const GramMatrix g = gram_from_state(state);
  EntanglementReport report;
  report.base = base;
  report.spectrum = eigh(g.entries()).eigenvalues;
  for (double& x : report.spectrum) {
    if (x < 0.0 && x >= -tol::kNegativeEigenvalue) x = 0.0;
  }
  report.entropy = entropy_of_spectrum(report.spectrum, base);
  report.max_entropy = max_entropy(state.d(), base);
  report.deviation = deviation(g);
  report.schmidt_rank = static_cast<std::size_t>(
      std::count_if(report.spectrum.begin(), report.spectrum.end(),
                    [](double x) { return x > tol::kSchmidtPositive; }));
  report.maximal = report.deviation <= tol::kMaximal;
  return report;
}

}  // namespace entgram
