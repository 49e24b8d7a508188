#include "entgram/explore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "entgram/errors.hpp"
#include "entgram/tolerances.hpp"

namespace entgram {

namespace {

constexpr std::uint64_t kSampleSalt = 0x5A4D504C45ULL;
constexpr std::uint64_t kRestartSalt = 0x4F5054494DULL;

bool uses_param(Family family, std::string_view name) {
  if (name == "sigma1") return true;
  if (family == Family::E) return false;
  if (family == Family::F) return name == "sigma3";
  return name == "sigma2" || name == "sigma3";
}

const Axis* find_axis(const ScanGrid& grid, std::string_view name) {
  for (const Axis& a : grid.axes)
    if (a.name == name) return &a;
  return nullptr;
}

// Grid coordinates of flat index `flat`, first axis slowest.
std::vector<double> grid_point(const ScanGrid& grid, std::size_t flat) {
  std::vector<double> values(grid.axes.size());
  for (std::size_t k = grid.axes.size(); k-- > 0;) {
    const Axis& axis = grid.axes[k];
    values[k] = axis.value(flat % axis.count);
    flat /= axis.count;
  }
  return values;
}

// ---------------------------------------------------------------------------
// Cholesky-factor parametrization for the maximizer: d real diagonal entries
// followed by (re, im) pairs of the strict lower triangle, row by row.

ComplexMatrix gram_from_factor(std::size_t d, const std::vector<double>& x) {
  ComplexMatrix b(d, d);
  std::size_t k = d;
  for (std::size_t i = 0; i < d; ++i) {
    b(i, i) = x[i];
    for (std::size_t j = 0; j < i; ++j, k += 2) b(i, j) = Complex(x[k], x[k + 1]);
  }
  ComplexMatrix g(d, d);
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Complex s = 0.0;
      for (std::size_t m = 0; m <= j; ++m) s += b(i, m) * std::conj(b(j, m));
      g(i, j) = s;
    }
    trace += g(i, i).real();
  }
  for (std::size_t i = 0; i < d; ++i) {
    g(i, i) = g(i, i).real() / trace;
    for (std::size_t j = i + 1; j < d; ++j) {
      g(i, j) /= trace;
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

double raw_entropy(const ComplexMatrix& g) {
  auto eig = eigh(g).eigenvalues;
  for (double& x : eig) x = std::max(x, 0.0);
  return entropy_of_spectrum(eig);
}

struct Objective {
  std::size_t d;
  double epsilon;
  double penalty;

  double operator()(const std::vector<double>& x) const {
    const ComplexMatrix g = gram_from_factor(d, x);
    const double shortfall = std::max(0.0, epsilon - deviation(g));
    return raw_entropy(g) - penalty * shortfall * shortfall;
  }
};

std::vector<double> numerical_gradient(const Objective& f, std::vector<double> x) {
  constexpr double kStep = 1e-6;
  std::vector<double> grad(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double keep = x[k];
    x[k] = keep + kStep;
    const double up = f(x);
    x[k] = keep - kStep;
    const double down = f(x);
    x[k] = keep;
    grad[k] = (up - down) / (2.0 * kStep);
  }
  return grad;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Gradient ascent with backtracking, the direction preconditioned by a BFGS
// inverse-Hessian estimate. Stops on improvement below 1e-12 or the
// iteration cap. Returns the number of steps taken.
std::size_t ascend(const Objective& f, std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> h(n * n, 0.0);
  auto reset = [&] {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = 1.0;
  };
  reset();

  double value = f(x);
  std::vector<double> grad = numerical_gradient(f, x);
  std::size_t it = 0;
  for (; it < static_cast<std::size_t>(tol::kAscentIterations); ++it) {
    std::vector<double> dir(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dir[i] += h[i * n + j] * grad[j];
    double slope = dot(dir, grad);
    if (!(slope > 0.0)) {
      reset();
      dir = grad;
      slope = dot(dir, grad);
    }
    if (slope == 0.0) break;

    double step = 1.0;
    std::vector<double> trial(n);
    double trial_value = -std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings, step *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * dir[i];
      trial_value = f(trial);
      if (trial_value >= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    const double improvement = trial_value - value;
    std::vector<double> trial_grad = numerical_gradient(f, trial);
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = trial[i] - x[i];
      y[i] = grad[i] - trial_grad[i];  // gradient change of -f
    }
    x = trial;
    value = trial_value;
    grad = std::move(trial_grad);

    const double sy = dot(s, y);
    if (sy > 1e-14 * std::sqrt(dot(s, s) * dot(y, y))) {
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hy[i] += h[i * n + j] * y[j];
      const double yhy = dot(y, hy);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          h[i * n + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
    }
    if (improvement < tol::kAscentImprovement) {
      ++it;
      break;
    }
  }
  return it;
}

struct RestartOutcome {
  ComplexMatrix gram;
  double entropy;
  double deviation;
  std::size_t iterations;
  double penalty;
};

RestartOutcome run_restart(std::size_t d, double epsilon, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(d * d);
  for (double& v : x) v = rng.normal();

  Objective f{d, epsilon, tol::kPenaltyStart};
  std::size_t iterations = 0;
  for (;;) {
    iterations += ascend(f, x);
    const double dev = deviation(gram_from_factor(d, x));
    if (dev >= epsilon - tol::kConstraint || f.penalty >= tol::kPenaltyCap) break;
    f.penalty = std::min(2.0 * f.penalty, tol::kPenaltyCap);
  }

  ComplexMatrix g = gram_from_factor(d, x);
  double dev = deviation(g);
  if (dev < epsilon && dev > 0.0) {
    // Push radially away from I/d onto the constraint surface; deviation is
    // homogeneous in G - I/d and the trace is unchanged.
    const double t = epsilon / dev;
    ComplexMatrix scaled = g;
    const double center = 1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Complex base = i == j ? Complex(center) : Complex(0.0);
        scaled(i, j) = base + t * (g(i, j) - base);
      }
    }
    if (eigh(scaled).eigenvalues.back() >= -tol::kPsd) {
      g = std::move(scaled);
      dev = deviation(g);
    }
  }
  return {g, raw_entropy(g), dev, iterations, f.penalty};
}

}  // namespace

// ---------------------------------------------------------------------------
// Families and grids

Family parse_family(std::string_view name) {
  if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'F') {
    return static_cast<Family>(name[0] - 'A');
  }
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) noexcept {
  static constexpr std::string_view kNames[] = {"A", "B", "C", "D", "E", "F"};
  return kNames[static_cast<int>(family)];
}

ComplexMatrix d4_candidate(Family family, double s1, double s2, double s3) {
  ComplexMatrix g(4, 4);
  for (std::size_t i = 0; i < 4; ++i) g(i, i) = 0.25;
  auto put = [&](std::size_t i, std::size_t j, double v) {
    g(i - 1, j - 1) = v;
    g(j - 1, i - 1) = v;
  };
  switch (family) {
    case Family::A:
    case Family::F:
      put(1, 2, s1), put(1, 3, s2), put(1, 4, s3);
      break;
    case Family::B:
      put(1, 2, s1), put(2, 3, s2), put(3, 4, s3);
      break;
    case Family::C:
      put(1, 2, s1), put(3, 4, s1);
      put(1, 3, s2), put(2, 4, s2);
      put(1, 4, s3), put(2, 3, s3);
      break;
    case Family::D:
      put(1, 2, s1), put(1, 3, s2), put(1, 4, s3);
      put(2, 3, s1), put(2, 4, s2), put(3, 4, s3);
      break;
    case Family::E:
      put(1, 2, s1);
      break;
  }
  return g;
}

double Axis::value(std::size_t i) const {
  if (i + 1 == count) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void ScanGrid::validate() const {
  if (axes.empty()) throw Error(ErrorCode::InvalidArgument, "scan grid has no axes");
  for (const Axis& a : axes) {
    if (a.count < 2) {
      throw Error(ErrorCode::InvalidArgument, "axis '" + a.name + "' needs at least 2 points");
    }
    if (!(a.min < a.max)) {
      throw Error(ErrorCode::InvalidArgument, "axis '" + a.name + "' needs min < max");
    }
  }
}

std::size_t ScanGrid::size() const {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= a.count;
  return n;
}

std::optional<std::size_t> ScanResult::argmax() const {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!points[k].entropy) continue;
    if (!best || *points[k].entropy > *points[*best].entropy) best = k;
  }
  return best;
}

ScanResult scan_d2(const ScanGrid& grid, LogBase base) {
  grid.validate();
  if (grid.axes.size() != 2 || grid.axes[0].name != "p" || grid.axes[1].name != "sigma") {
    throw Error(ErrorCode::InvalidArgument, "d=2 scan needs axes (p, sigma) in that order");
  }
  ScanResult result{grid, 2, base, {"p", "sigma"}, {}};
  result.points.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::vector<double> v = grid_point(grid, k);
    const double p = v[0];
    const double s = v[1];
    ScanPoint point{v, false, std::nullopt, std::nullopt};
    if (p >= 0.0 && p <= 1.0 && s * s <= p * (1.0 - p) + tol::kD2Feasible) {
      const auto [lo, hi] = d2_closed_form({p, s});
      const double spectrum[] = {hi, lo};
      point.feasible = true;
      point.entropy = entropy_of_spectrum(spectrum, base);
      point.deviation = deviation(ComplexMatrix{{p, s}, {s, 1.0 - p}});
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

ScanResult scan_d4(const ScanGrid& grid, LogBase base) {
  grid.validate();
  if (!grid.family) throw Error(ErrorCode::UnknownFamily, "d=4 scan needs a family");
  const Family family = *grid.family;
  for (const Axis& a : grid.axes) {
    if (a.name != "sigma1" && a.name != "sigma2" && a.name != "sigma3") {
      throw Error(ErrorCode::InvalidArgument, "unknown d=4 axis '" + a.name + "'");
    }
    if (!uses_param(family, a.name)) {
      throw Error(ErrorCode::InvalidArgument, "family " + std::string(to_string(family)) +
                                                  " does not sweep '" + a.name + "'");
    }
  }

  const char* names[] = {"sigma1", "sigma2", "sigma3"};
  ScanResult result{grid, 4, base, {"p", "sigma1", "sigma2", "sigma3"}, {}};
  result.points.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::vector<double> v = grid_point(grid, k);
    double sigma[3] = {0.0, 0.0, 0.0};
    for (int m = 0; m < 3; ++m) {
      if (!uses_param(family, names[m]) && !(family == Family::F && m == 1)) continue;
      if (const Axis* axis = find_axis(grid, names[m])) {
        sigma[m] = v[static_cast<std::size_t>(axis - grid.axes.data())];
      } else if (auto it = grid.fixed.find(names[m]); it != grid.fixed.end()) {
        sigma[m] = it->second;
      }
    }

    ScanPoint point{{0.25, sigma[0], sigma[1], sigma[2]}, false, std::nullopt, std::nullopt};
    const ComplexMatrix g = d4_candidate(family, sigma[0], sigma[1], sigma[2]);
    if (check_g4_membership(g).member) {
      auto eig = eigh(g).eigenvalues;
      // Minors can pass a hair below zero while an eigenvalue does not.
      if (eig.back() >= -tol::kPsd) {
        point.feasible = true;
        point.entropy = entropy_of_spectrum(eig, base);
        point.deviation = deviation(g);
      }
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Sampling

PureState random_state(std::size_t d, std::size_t trunc_dim, std::uint64_t seed) {
  if (d < 2 || trunc_dim < 1) {
    throw Error(ErrorCode::InvalidArgument, "random_state needs d >= 2 and N >= 1");
  }
  Rng rng(seed);
  std::vector<Complex> c(d * trunc_dim);
  for (Complex& z : c) z = rng.complex_normal();
  return make_state(d, trunc_dim, c, true);
}

GramMatrix random_gram(std::size_t d, std::uint64_t seed, GramSampling mode) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "random_gram needs d >= 2");
  Rng rng(seed);
  ComplexMatrix b(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) b(i, j) = rng.complex_normal();
  if (mode == GramSampling::boundary_biased) {
    const std::size_t k = rng.index(d);
    b(k, k) = 0.0;
  }
  ComplexMatrix g = b * b.adjoint();
  const double trace = g.trace().real();
  for (std::size_t i = 0; i < d; ++i) {
    g(i, i) = g(i, i).real() / trace;
    for (std::size_t j = i + 1; j < d; ++j) {
      g(i, j) /= trace;
      g(j, i) = std::conj(g(i, j));
    }
  }
  return GramMatrix(std::move(g));
}

// ---------------------------------------------------------------------------
// Maximization and verification

MaximizeResult maximize_entropy(std::size_t d, double epsilon, std::size_t restarts,
                                std::uint64_t seed) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "maximize_entropy needs d >= 2");
  if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "need at least one restart");
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be >= 0");
  if (epsilon > max_deviation(d)) {
    throw Error(ErrorCode::InfeasibleConstraint,
                "no unit-trace Gram matrix has deviation >= " + std::to_string(epsilon));
  }

  std::optional<RestartOutcome> best;
  std::size_t best_index = 0;
  std::size_t iterations = 0;
  std::vector<double> entropies;
  entropies.reserve(restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    RestartOutcome out = run_restart(d, epsilon, split_seed(seed ^ kRestartSalt, r));
    iterations += out.iterations;
    const bool feasible = out.deviation >= epsilon - tol::kConstraint;
    entropies.push_back(feasible ? out.entropy : -std::numeric_limits<double>::infinity());
    if (feasible && (!best || out.entropy > best->entropy)) {
      best = std::move(out);
      best_index = r;
    }
  }
  if (!best) {
    throw Error(ErrorCode::InfeasibleConstraint, "no restart satisfied the deviation constraint");
  }
  return MaximizeResult{GramMatrix(best->gram), best->entropy, best->deviation, best_index,
                        iterations, best->penalty, std::move(entropies)};
}

VerifyReport verify_conjecture(std::size_t d, std::size_t samples, double epsilon,
                               std::uint64_t seed, std::size_t optimizer_restarts,
                               std::size_t frontier_bins) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "verify needs d >= 2");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  if (frontier_bins < 1) throw Error(ErrorCode::InvalidArgument, "need at least one frontier bin");

  VerifyReport report;
  report.d = d;
  report.samples = samples;
  report.epsilon = epsilon;
  report.seed = seed;
  report.log_d = max_entropy(d);
  report.optimizer_restarts = optimizer_restarts;
  report.constrained_set_empty = epsilon > max_deviation(d);

  const double dev_max = max_deviation(d);
  const double width = dev_max / static_cast<double>(frontier_bins);
  report.frontier.resize(frontier_bins);
  for (std::size_t b = 0; b < frontier_bins; ++b) {
    report.frontier[b].lo = width * static_cast<double>(b);
    report.frontier[b].hi = b + 1 == frontier_bins ? dev_max : width * static_cast<double>(b + 1);
  }

  const double threshold = report.log_d - tol::kViolation;
  for (std::size_t i = 0; i < samples; ++i) {
    const GramSampling mode = i % 4 == 3 ? GramSampling::boundary_biased : GramSampling::interior;
    const GramMatrix g = random_gram(d, split_seed(seed ^ kSampleSalt, i), mode);
    const double dev = deviation(g);
    const double ent = entropy(g);

    auto bin = std::min(static_cast<std::size_t>(dev / width), frontier_bins - 1);
    FrontierBin& fb = report.frontier[bin];
    ++fb.count;
    fb.max_entropy = fb.max_entropy ? std::max(*fb.max_entropy, ent) : ent;

    if (dev >= epsilon) {
      ++report.samples_above_epsilon;
      report.sample_max_entropy =
          report.sample_max_entropy ? std::max(*report.sample_max_entropy, ent) : ent;
      if (ent >= threshold) ++report.violations;
    }
  }
  report.max_entropy = report.sample_max_entropy;

  if (!report.constrained_set_empty && optimizer_restarts > 0) {
    MaximizeResult opt = maximize_entropy(d, epsilon, optimizer_restarts, seed);
    if (opt.entropy >= threshold) ++report.violations;
    report.max_entropy = report.max_entropy ? std::max(*report.max_entropy, opt.entropy) : opt.entropy;
    report.optimizer = std::move(opt);
  }
  if (report.max_entropy) report.gap = report.log_d - *report.max_entropy;
  return report;
}

}  // namespace entgram
