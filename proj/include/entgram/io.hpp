#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "entgram/entangle.hpp"
#include "entgram/explore.hpp"
#include "entgram/gram.hpp"
#include "entgram/state.hpp"

namespace entgram::io {

/// Rounds to 12 significant digits, the precision of every report and CSV.
double round12(double x);
/// printf-style "%.12g".
std::string format12(double x);

// State file: {"d", "trunc_dim", "coeffs": [[[re, im], ...], ...], "normalized"}.
// Coefficients are written at full round-trip precision so a stored state
// still passes the unit-norm check when read back.
nlohmann::json state_to_json(const PureState& state);
/// Throws ParseError naming the offending field; a file with
/// "normalized": false is rescaled on load.
PureState state_from_json(const nlohmann::json& j);

// Gram matrix: {"d", "entries": [[[re, im], ...], ...]}.
nlohmann::json gram_to_json(const GramMatrix& g);
GramMatrix gram_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const EntanglementReport& report);
nlohmann::json scan_to_json(const ScanResult& result);
nlohmann::json verify_to_json(const VerifyReport& report);

/// Header `p,sigma,feasible,entropy,deviation` for d = 2 and
/// `family,p,sigma1,sigma2,sigma3,feasible,entropy,deviation` for d = 4.
/// Infeasible rows leave entropy and deviation empty.
void write_scan_csv(std::ostream& out, const ScanResult& result);

/// Input that does not match a documented file format.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : std::runtime_error("field '" + field + "': " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace entgram::io
