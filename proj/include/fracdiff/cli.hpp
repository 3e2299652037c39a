#ifndef FRACDIFF_CLI_HPP
#define FRACDIFF_CLI_HPP

#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "fracdiff/numeric.hpp"

namespace fracdiff::cli {

enum class Command { deriv, integ, check, rolle, mvt, table, plot };
enum class Format { text, csv, json };

struct RunConfig {
  Command command = Command::deriv;
  std::string expression;
  double alpha = 0.5;
  TruncationOrder k = TruncationOrder::infinite();
  std::optional<double> at;
  double from = 0.1;
  double to = 3.0;
  int grid_n = 50;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> tol;
  std::optional<std::string> output_path;
  Format format = Format::text;
  std::string which = "theorem4";
};

/// Bad flags or a missing per-command field; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (without the program name). Returns nullopt when help was
/// printed to `out`. Throws UsageError.
std::optional<RunConfig> parse_args(std::span<const std::string> args, std::ostream& out);

/// Runs one command, writing its result to `out`. Library errors propagate.
void execute(const RunConfig& cfg, std::ostream& out);

/// Whole front door: 0 on success, 2 on usage errors, 1 on library errors
/// with a single "ERROR <kind>: <message>" line on `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace fracdiff::cli

#endif // FRACDIFF_CLI_HPP
