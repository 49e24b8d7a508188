#include "entgram/gram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entgram/errors.hpp"
#include "entgram/tolerances.hpp"

namespace entgram {

namespace {

ComplexMatrix submatrix(const ComplexMatrix& g, std::span<const std::size_t> zero_based) {
  const std::size_t k = zero_based.size();
  ComplexMatrix sub(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) sub(a, b) = g(zero_based[a], zero_based[b]);
  return sub;
}

void require_hermitian_4x4(const ComplexMatrix& g) {
  if (g.rows() != 4 || g.cols() != 4) {
    throw Error(ErrorCode::ShapeMismatch, "G4 membership needs a 4x4 matrix");
  }
  if (hermitian_asymmetry(g) > tol::kHermitian) {
    throw Error(ErrorCode::NotHermitian, "G4 candidate is not Hermitian");
  }
}

void check_trace_and_diagonal(const ComplexMatrix& g, G4Verdict& verdict) {
  if (std::abs(g.trace().real() - 1.0) > tol::kG4Trace) {
    verdict.failed_constraints.emplace_back("trace");
  }
  for (std::size_t i = 0; i < g.rows(); ++i) {
    const double x = g(i, i).real();
    if (x < -tol::kG4Trace || x > 1.0 + tol::kG4Trace) {
      verdict.failed_constraints.emplace_back("diagonal-range");
      break;
    }
  }
}

}  // namespace

GramMatrix::GramMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (!entries_.is_square()) {
    throw Error(ErrorCode::ShapeMismatch, "Gram matrix must be square");
  }
  if (hermitian_asymmetry(entries_) > tol::kHermitian) {
    throw Error(ErrorCode::NotHermitian, "Gram matrix is not Hermitian");
  }
  const double smallest = eigh(entries_).eigenvalues.back();
  if (smallest < -tol::kPsd) {
    throw Error(ErrorCode::NotPSD, "Gram matrix has eigenvalue " + std::to_string(smallest));
  }
}

GramMatrix gram_from_state(const PureState& state) {
  const std::size_t d = state.d();
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    g(i, i) = norm_squared(state.component(i));
    for (std::size_t j = i + 1; j < d; ++j) {
      g(i, j) = inner(state.component(i), state.component(j));
      g(j, i) = std::conj(g(i, j));
    }
  }
  return GramMatrix(std::move(g));
}

GramMatrix gram_from_vectors(std::span<const std::vector<Complex>> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidArgument, "empty vector family");
  const std::size_t len = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != len) throw Error(ErrorCode::DimensionMismatch, "vectors differ in length");
  }
  const std::size_t n = vectors.size();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = norm_squared(vectors[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      g(i, j) = inner(vectors[i], vectors[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return GramMatrix(std::move(g));
}

std::size_t rank(const GramMatrix& g, double tolerance) {
  const auto eig = eigh(g.entries());
  return static_cast<std::size_t>(std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                                [&](double x) { return x > tolerance; }));
}

std::vector<std::vector<Complex>> realize(const GramMatrix& g) {
  const ComplexMatrix b = cholesky_psd(g.entries());
  std::vector<std::vector<Complex>> rows;
  rows.reserve(b.rows());
  // <v_i|v_j> = sum_k conj(v_i)_k (v_j)_k must equal G_ij = sum_k B_ik conj(B_jk),
  // so the vectors are the conjugated rows of B.
  const ComplexMatrix v = b.conjugate();
  for (std::size_t i = 0; i < v.rows(); ++i) rows.emplace_back(v.row(i).begin(), v.row(i).end());
  return rows;
}

bool is_invariant_under(const GramMatrix& before, const GramMatrix& after) {
  if (before.d() != after.d()) {
    throw Error(ErrorCode::DimensionMismatch, "Gram matrices differ in dimension");
  }
  return frobenius_distance(before.entries(), after.entries()) <= tol::kInvariance;
}

double cauchy_schwarz_excess(const ComplexMatrix& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::norm(g(i, j)) - g(i, i).real() * g(j, j).real());
  return worst;
}

std::string minor_label(std::span<const std::size_t> indices) {
  std::string s = "minor{";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) s += ',';
    s += std::to_string(indices[k]);
  }
  return s + '}';
}

std::vector<PrincipalMinor> principal_minors(const ComplexMatrix& g) {
  if (!g.is_square()) throw Error(ErrorCode::ShapeMismatch, "principal minors need a square matrix");
  const std::size_t d = g.rows();
  if (d > 8) throw Error(ErrorCode::InvalidArgument, "principal minors limited to d <= 8");

  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    subsets.push_back(std::move(idx));
  }
  auto is_leading = [](const std::vector<std::size_t>& s) {
    return s.size() >= 2 && s.back() == s.size() - 1;
  };
  std::stable_sort(subsets.begin(), subsets.end(), [&](const auto& a, const auto& b) {
    if (is_leading(a) != is_leading(b)) return is_leading(a);
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });

  std::vector<PrincipalMinor> minors;
  minors.reserve(subsets.size());
  for (const auto& idx : subsets) {
    const double value = cofactor_determinant(submatrix(g, idx)).real();
    std::vector<std::size_t> one_based(idx.size());
    std::transform(idx.begin(), idx.end(), one_based.begin(), [](std::size_t i) { return i + 1; });
    minors.push_back({std::move(one_based), value});
  }
  return minors;
}

G4Verdict check_g4_membership(const ComplexMatrix& g) {
  require_hermitian_4x4(g);
  G4Verdict verdict;
  check_trace_and_diagonal(g, verdict);
  for (const auto& m : principal_minors(g)) {
    if (m.value < -tol::kMinor) verdict.failed_constraints.push_back(minor_label(m.indices));
  }
  verdict.member = verdict.failed_constraints.empty();
  return verdict;
}

G4Verdict check_g4_leading_minors(const ComplexMatrix& g) {
  require_hermitian_4x4(g);
  G4Verdict verdict;
  check_trace_and_diagonal(g, verdict);
  for (std::size_t size : {4, 3, 2}) {
    std::vector<std::size_t> idx(size);
    for (std::size_t k = 0; k < size; ++k) idx[k] = k;
    const double value = cofactor_determinant(submatrix(g, idx)).real();
    if (value < -tol::kMinor) {
      for (auto& i : idx) ++i;
      verdict.failed_constraints.push_back(minor_label(idx));
    }
  }
  verdict.member = verdict.failed_constraints.empty();
  return verdict;
}

}  // namespace entgram
