// entgram: command-line front end for the Gram-matrix entanglement library.
//
// Exit codes: 0 success (hypothesis holds), 2 input validation, 3 degenerate
// state, 4 I/O, 5 hypothesis violation found.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entgram/entangle.hpp"
#include "entgram/errors.hpp"
#include "entgram/explore.hpp"
#include "entgram/io.hpp"

namespace {

using namespace entgram;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;
constexpr int kExitViolation = 5;
constexpr std::uint64_t kDefaultSeed = 42;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string input;
  std::string out;
  std::string log_base = "e";
  std::string format;
  std::string family;
  std::size_t d = 2;
  std::size_t trunc_dim = 8;
  std::size_t grid_p = 201;
  std::size_t grid_sigma = 101;
  std::size_t grid_sigma4 = 41;
  double sigma_min = -0.25;
  double sigma_max = 0.25;
  double fixed_sigma2 = 0.1;
  double epsilon = 0.05;
  std::size_t samples = 10000;
  std::size_t count = 1;
  std::size_t restarts = 8;
  std::uint64_t seed = kDefaultSeed;
};

LogBase parse_base(const std::string& s) { return s == "2" ? LogBase::two : LogBase::natural; }

// Writes `text` to `path`, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoFailure("write to '" + path + "' failed");
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoFailure("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw io::ParseError("<root>", std::string("malformed JSON: ") + e.what());
  }
}

int cmd_analyze(const CliConfig& cfg) {
  const PureState state = io::state_from_json(read_json(cfg.input));
  const EntanglementReport report = analyze(state, parse_base(cfg.log_base));
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "entropy,max_entropy,base,deviation,schmidt_rank,maximal\n"
       << io::format12(report.entropy) << ',' << io::format12(report.max_entropy) << ','
       << to_string(report.base) << ',' << io::format12(report.deviation) << ','
       << report.schmidt_rank << ',' << (report.maximal ? "true" : "false") << '\n';
    emit(cfg.out, os.str());
  } else {
    emit(cfg.out, io::report_to_json(report).dump(2) + "\n");
  }
  return kExitOk;
}

int finish_scan(const CliConfig& cfg, const ScanResult& result) {
  std::ostringstream body;
  if (cfg.format == "json") {
    body << io::scan_to_json(result).dump(2) << '\n';
  } else {
    io::write_scan_csv(body, result);
  }
  emit(cfg.out, body.str());

  std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
  std::size_t feasible = 0;
  for (const ScanPoint& p : result.points) feasible += p.feasible ? 1 : 0;
  log << "points " << result.points.size() << ", feasible " << feasible << '\n';
  if (auto best = result.argmax()) {
    const ScanPoint& p = result.points[*best];
    log << "max entropy " << io::format12(*p.entropy) << " at";
    for (std::size_t k = 0; k < p.params.size(); ++k) {
      log << ' ' << result.columns[k] << '=' << io::format12(p.params[k]);
    }
    log << '\n';
  } else {
    log << "no feasible point\n";
  }
  return kExitOk;
}

int cmd_scan2d(const CliConfig& cfg) {
  ScanGrid grid;
  grid.axes = {{"p", 0.0, 1.0, cfg.grid_p}, {"sigma", 0.0, 0.5, cfg.grid_sigma}};
  return finish_scan(cfg, scan_d2(grid, parse_base(cfg.log_base)));
}

int cmd_scan4d(const CliConfig& cfg) {
  ScanGrid grid;
  grid.family = parse_family(cfg.family);
  const Axis axis{"", cfg.sigma_min, cfg.sigma_max, cfg.grid_sigma4};
  auto add = [&](const char* name) {
    Axis a = axis;
    a.name = name;
    grid.axes.push_back(a);
  };
  switch (*grid.family) {
    case Family::E:
      add("sigma1");
      break;
    case Family::F:
      add("sigma1");
      add("sigma3");
      grid.fixed["sigma2"] = cfg.fixed_sigma2;
      break;
    default:
      add("sigma1");
      add("sigma2");
      add("sigma3");
      break;
  }
  return finish_scan(cfg, scan_d4(grid, parse_base(cfg.log_base)));
}

int cmd_verify(const CliConfig& cfg) {
  const VerifyReport report =
      verify_conjecture(cfg.d, cfg.samples, cfg.epsilon, cfg.seed, cfg.restarts);
  json j = io::verify_to_json(report);
  if (report.constrained_set_empty) {
    j["note"] = "constrained set is empty: epsilon exceeds the largest attainable deviation";
  }
  emit(cfg.out, j.dump(2) + "\n");
  return report.violations == 0 ? kExitOk : kExitViolation;
}

int cmd_sample(const CliConfig& cfg) {
  std::string prefix = cfg.out;
  if (prefix.size() > 5 && prefix.ends_with(".json")) prefix.resize(prefix.size() - 5);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const PureState s = random_state(cfg.d, cfg.trunc_dim, split_seed(cfg.seed, i));
    const std::string path = prefix + "_" + std::to_string(i) + ".json";
    emit(path, io::state_to_json(s).dump(2) + "\n");
    std::cout << path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram-matrix entanglement analysis of (d, infinity) pure states"};
  app.require_subcommand(1);
  CliConfig cfg;

  const auto base_check = CLI::IsMember({"e", "2"});
  const auto grid_check = CLI::Range(std::size_t{2}, std::size_t{100000});

  auto* analyze_cmd = app.add_subcommand("analyze", "Entanglement report for a state file");
  analyze_cmd->add_option("file", cfg.input, "State JSON file")->required();
  analyze_cmd->add_option("--log-base", cfg.log_base, "Logarithm base")->check(base_check);
  analyze_cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze_cmd->add_option("--out", cfg.out, "Output path (default stdout)");

  auto* scan2 = app.add_subcommand("scan2d", "Entropy over the (p, |sigma|) plane for d = 2");
  scan2->add_option("--grid-p", cfg.grid_p, "Points along p in [0, 1]")->check(grid_check);
  scan2->add_option("--grid-sigma", cfg.grid_sigma, "Points along |sigma| in [0, 1/2]")
      ->check(grid_check);
  scan2->add_option("--log-base", cfg.log_base, "Logarithm base")->check(base_check);
  scan2->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  scan2->add_option("--out", cfg.out, "CSV path (default stdout)");

  auto* scan4 = app.add_subcommand("scan4d", "Entropy along a d = 4 placement family");
  scan4->add_option("--family", cfg.family, "Placement family")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C", "D", "E", "F"}));
  scan4->add_option("--grid-sigma", cfg.grid_sigma4, "Points per sigma axis")->check(grid_check);
  scan4->add_option("--sigma-min", cfg.sigma_min, "Lower end of each sigma axis");
  scan4->add_option("--sigma-max", cfg.sigma_max, "Upper end of each sigma axis");
  scan4->add_option("--fixed-sigma2", cfg.fixed_sigma2, "Held value of sigma2 (family F)");
  scan4->add_option("--log-base", cfg.log_base, "Logarithm base")->check(base_check);
  scan4->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  scan4->add_option("--out", cfg.out, "CSV path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Numerical check of the maximal-entanglement criterion");
  verify->add_option("--d", cfg.d, "Finite-part dimension")->check(CLI::Range(2, 8));
  verify->add_option("--samples", cfg.samples, "Random Gram matrices to sample")
      ->check(CLI::Range(std::size_t{0}, std::size_t{100000000}));
  verify->add_option("--epsilon", cfg.epsilon, "Deviation threshold")
      ->check(CLI::PositiveNumber);
  verify->add_option("--restarts", cfg.restarts, "Optimizer restarts")
      ->check(CLI::Range(std::size_t{0}, std::size_t{10000}));
  verify->add_option("--seed", cfg.seed, "Master seed");
  verify->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json"}));
  verify->add_option("--out", cfg.out, "JSON path (default stdout)");

  auto* sample = app.add_subcommand("sample", "Write random normalized state files");
  sample->add_option("--d", cfg.d, "Finite-part dimension")->check(CLI::Range(2, 64));
  sample->add_option("--trunc-dim", cfg.trunc_dim, "Truncation dimension N")
      ->check(CLI::Range(1, 1 << 20));
  sample->add_option("--count,--samples", cfg.count, "Number of files")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  sample->add_option("--seed", cfg.seed, "Master seed");
  sample->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json"}));
  sample->add_option("--out", cfg.out, "Path prefix; files are <prefix>_<index>.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(cfg);
    if (scan2->parsed()) return cmd_scan2d(cfg);
    if (scan4->parsed()) return cmd_scan4d(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (sample->parsed()) return cmd_sample(cfg);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::ZeroState) return kExitDegenerate;
    if (e.code() == ErrorCode::NoConvergence) return 1;
    return kExitInvalid;
  }
  return kExitInvalid;
}
