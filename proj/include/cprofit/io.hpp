#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cprofit/curves.hpp"

namespace cprofit {

/// Raised on malformed input data or configuration; the CLI maps it to
/// exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formats a double with 9 significant digits ("%.9g"), the fixed
/// serialization used by every CSV and manifest writer.
std::string format_number(double value);

/// One CSV cell row for writers: preformatted fields.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Writes UTF-8, '\n' line endings, mandatory header.
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// FNV-1a 64-bit digest of a file's bytes, as fixed-width hex.
std::string file_digest(const std::filesystem::path& path);

/// Evaluation dataset: rows of (y, t, score) with optional per-row
/// cost-benefit columns cb00,cb01,cb10,cb11 (unitary when absent).
struct EvalDataset {
  std::vector<RankedRow> rows;   // input order, not ranked
  bool has_cb_columns = false;
};

/// Parses the eval CSV schema. Throws ValidationError naming the missing
/// column or the offending 1-based data row.
EvalDataset read_eval_csv(const std::filesystem::path& path);

}  // namespace cprofit
