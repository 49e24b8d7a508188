#include "entgram/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace entgram::io {

using nlohmann::json;

namespace {

json complex_rows(const ComplexMatrix& m, bool round) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const Complex& z : m.row(i)) {
      row.push_back(round ? json::array({round12(z.real()), round12(z.imag())})
                          : json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(name, "missing");
  return *it;
}

std::size_t positive_count(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(name, "expected a positive integer");
  }
  return v.get<std::size_t>();
}

ComplexMatrix parse_complex_rows(const json& j, const char* name, std::size_t rows,
                                 std::size_t cols) {
  const json& v = field(j, name);
  if (!v.is_array() || v.size() != rows) {
    throw ParseError(name, "expected " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(name, "row " + std::to_string(i) + " must hold " + std::to_string(cols) +
                                 " [re, im] pairs");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const json& pair = row[k];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw ParseError(name, "entry (" + std::to_string(i) + "," + std::to_string(k) +
                                   ") is not a [re, im] pair");
      }
      const double re = pair[0].get<double>();
      const double im = pair[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ParseError(name, "non-finite entry");
      }
      m(i, k) = Complex(re, im);
    }
  }
  return m;
}

json optional_number(const std::optional<double>& x) {
  return x ? json(round12(*x)) : json(nullptr);
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json state_to_json(const PureState& state) {
  return json{{"d", state.d()},
              {"trunc_dim", state.trunc_dim()},
              {"coeffs", complex_rows(state.coeffs(), false)},
              {"normalized", true}};
}

PureState state_from_json(const json& j) {
  const std::size_t d = positive_count(j, "d");
  const std::size_t n = positive_count(j, "trunc_dim");
  const json& flag = field(j, "normalized");
  if (!flag.is_boolean()) throw ParseError("normalized", "expected a boolean");
  ComplexMatrix c = parse_complex_rows(j, "coeffs", d, n);
  return make_state(std::move(c), !flag.get<bool>());
}

json gram_to_json(const GramMatrix& g) {
  return json{{"d", g.d()}, {"entries", complex_rows(g.entries(), true)}};
}

GramMatrix gram_from_json(const json& j) {
  const std::size_t d = positive_count(j, "d");
  return GramMatrix(parse_complex_rows(j, "entries", d, d));
}

json report_to_json(const EntanglementReport& r) {
  json spectrum = json::array();
  for (double x : r.spectrum) spectrum.push_back(round12(x));
  return json{{"entropy", round12(r.entropy)},
              {"max_entropy", round12(r.max_entropy)},
              {"base", std::string(to_string(r.base))},
              {"deviation", round12(r.deviation)},
              {"spectrum", std::move(spectrum)},
              {"schmidt_rank", r.schmidt_rank},
              {"maximal", r.maximal}};
}

json scan_to_json(const ScanResult& result) {
  json axes = json::array();
  for (const Axis& a : result.grid.axes) {
    axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}});
  }
  json points = json::array();
  for (const ScanPoint& p : result.points) {
    json params = json::array();
    for (double v : p.params) params.push_back(round12(v));
    points.push_back({{"params", std::move(params)},
                      {"feasible", p.feasible},
                      {"entropy", optional_number(p.entropy)},
                      {"deviation", optional_number(p.deviation)}});
  }
  json fixed = json::object();
  for (const auto& [k, v] : result.grid.fixed) fixed[k] = round12(v);
  return json{{"d", result.d},
              {"base", std::string(to_string(result.base))},
              {"family", result.grid.family ? json(std::string(to_string(*result.grid.family)))
                                            : json(nullptr)},
              {"axes", std::move(axes)},
              {"fixed", std::move(fixed)},
              {"columns", result.columns},
              {"points", std::move(points)}};
}

json verify_to_json(const VerifyReport& r) {
  json frontier = json::array();
  for (const FrontierBin& b : r.frontier) {
    frontier.push_back({{"lo", round12(b.lo)},
                        {"hi", round12(b.hi)},
                        {"count", b.count},
                        {"max_entropy", optional_number(b.max_entropy)}});
  }
  json optimizer = nullptr;
  if (r.optimizer) {
    const MaximizeResult& m = *r.optimizer;
    json restarts = json::array();
    for (double e : m.restart_entropies) {
      restarts.push_back(std::isfinite(e) ? json(round12(e)) : json(nullptr));
    }
    optimizer = {{"restarts", r.optimizer_restarts},
                 {"best_restart", m.best_restart},
                 {"iterations", m.iterations},
                 {"final_penalty", round12(m.final_penalty)},
                 {"entropy", round12(m.entropy)},
                 {"deviation", round12(m.deviation)},
                 {"restart_entropies", std::move(restarts)},
                 {"gram", gram_to_json(m.gram)}};
  }
  return json{{"d", r.d},
              {"samples", r.samples},
              {"epsilon", round12(r.epsilon)},
              {"seed", r.seed},
              {"base", "e"},
              {"log_d", round12(r.log_d)},
              {"constrained_set_empty", r.constrained_set_empty},
              {"samples_above_epsilon", r.samples_above_epsilon},
              {"sample_max_entropy", optional_number(r.sample_max_entropy)},
              {"max_entropy", optional_number(r.max_entropy)},
              {"gap", optional_number(r.gap)},
              {"frontier", std::move(frontier)},
              {"optimizer", std::move(optimizer)},
              {"violations", r.violations}};
}

void write_scan_csv(std::ostream& out, const ScanResult& result) {
  const bool four = result.d == 4;
  out << (four ? "family,p,sigma1,sigma2,sigma3,feasible,entropy,deviation\n"
               : "p,sigma,feasible,entropy,deviation\n");
  const std::string family =
      four && result.grid.family ? std::string(to_string(*result.grid.family)) : "";
  for (const ScanPoint& p : result.points) {
    if (four) out << family << ',';
    for (double v : p.params) out << format12(v) << ',';
    out << (p.feasible ? 1 : 0) << ',';
    if (p.entropy) out << format12(*p.entropy);
    out << ',';
    if (p.deviation) out << format12(*p.deviation);
    out << '\n';
  }
}

}  // namespace entgram::io
