#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qes/cli/json_io.hpp"
#include "qes/errors.hpp"
#include "qes/perturb.hpp"

namespace qes::cli {

enum class OutputFormat { table, json, csv };

struct RunConfig {
  std::string command;
  std::optional<int> which;  ///< table id for `tables`
  std::optional<int> N;
  std::optional<int> n;
  std::optional<int> K;  ///< Pascal depth
  int order = 0;
  // physical mode
  std::optional<std::string> A, B, C, G;
  int ell = 0;
  // formal mode
  std::optional<std::string> lambda, b, g;
  Gauge gauge = Gauge::first_component_zero;
  OutputFormat format = OutputFormat::table;
  int precision = 17;
  std::string out;
  unsigned seed = 20240917u;
};

/// A command result in every representation it supports. `csv` is empty
/// for commands without a flat table. `ok` is false when an internal check
/// failed; the document then says which.
struct Output {
  json document;
  std::string table;
  std::string csv;
  bool ok = true;
};

Output cmd_roots(const RunConfig& config);
Output cmd_coeffs(const RunConfig& config);
Output cmd_pascal(const RunConfig& config);
Output cmd_leftvecs(const RunConfig& config);
Output cmd_series(const RunConfig& config);
Output cmd_spectrum(const RunConfig& config);
Output cmd_verify(const RunConfig& config);
/// Paper-layout tables 1..4; UsageError for any other id.
Output cmd_tables(const RunConfig& config);

Output dispatch(const RunConfig& config);

/// The requested representation; UsageError for CSV on a non-flat result.
std::string render(const Output& output, OutputFormat format);

json error_document(const std::string& kind, const std::string& message);

/// Runs the command, writes the result (or an error object) to `out` or to
/// config.out, and returns the process exit code: 0 on success, 1 when a
/// check failed or a computation raised, 2 for usage errors.
int run(const RunConfig& config, std::ostream& out);

}  // namespace qes::cli
