#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/cli/config.hpp"

namespace casimir::cli {

struct Row {
  std::vector<double> values;  // one per numeric column
  std::string flag = "ok";     // "ok", "above_tol" or "aborted"
  std::string reason;          // set when aborted
};

struct Table {
  std::vector<std::string> columns;  // numeric columns; "flag" is appended on output
  std::vector<Row> rows;
  bool computational_error = false;
};

/// Column names, with units, for the configured mode.
std::vector<std::string> columns(const RunConfig& cfg);

/// Evaluates every sweep point (or the single configured point). Points run
/// concurrently; rows come back in sweep order. A failed point produces an
/// aborted row instead of throwing.
Table compute(const RunConfig& cfg);

void write_csv(std::ostream& os, const RunConfig& cfg, const Table& t);
void write_json(std::ostream& os, const RunConfig& cfg, const Table& t);

/// One line per computed quantity: value +- error, or a row count for sweeps.
void write_summary(std::ostream& os, const RunConfig& cfg, const Table& t);

enum ExitCode : int { kOk = 0, kConfigError = 2, kComputeError = 3, kIoError = 4 };

/// Computes, writes the table to cfg.output.path and the summary to `log`.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace casimir::cli
