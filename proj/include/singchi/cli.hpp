#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "singchi/exactalg.hpp"
#include "singchi/integral.hpp"

namespace singchi::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kNotStabilized = 4,
  kInternal = 5,
};

/// `{"terms": [{"e": [...], "c": "..."}, ...]}` entries in graded-lex order.
nlohmann::ordered_json terms_to_json(const MultiPoly& p);
/// Inverse of terms_to_json; throws std::invalid_argument on malformed input.
MultiPoly terms_from_json(const nlohmann::json& terms, std::size_t arity);

nlohmann::ordered_json motivic_to_json(const MotivicClass& m);

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singchi::cli
