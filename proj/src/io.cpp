#include "cprofit/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cprofit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) {
    // trim surrounding whitespace
    std::size_t begin = 0;
    std::size_t end = field.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(field[begin])))
      ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(field[end - 1])))
      --end;
    fields.push_back(field.substr(begin, end - begin));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::string& column,
                    std::size_t row) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ValidationError("row " + std::to_string(row) + ": column '" +
                          column + "' is not a number: '" + text + "'");
  }
}

int parse_binary(const std::string& text, const std::string& column,
                 std::size_t row) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  throw ValidationError("row " + std::to_string(row) + ": column '" + column +
                        "' must be 0 or 1, got '" + text + "'");
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for digest: " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buffer[4096];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ull;
    }
    if (got < static_cast<std::streamsize>(sizeof(buffer))) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(hash));
  return hex;
}

EvalDataset read_eval_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("empty file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);

  const auto column_index = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int y_col = column_index("y");
  const int t_col = column_index("t");
  const int score_col = column_index("score");
  if (y_col < 0) throw ValidationError("missing required column 'y'");
  if (t_col < 0) throw ValidationError("missing required column 't'");
  if (score_col < 0) throw ValidationError("missing required column 'score'");

  const int cb_cols[4] = {column_index("cb00"), column_index("cb01"),
                          column_index("cb10"), column_index("cb11")};
  const int cb_present =
      (cb_cols[0] >= 0) + (cb_cols[1] >= 0) + (cb_cols[2] >= 0) +
      (cb_cols[3] >= 0);
  if (cb_present != 0 && cb_present != 4)
    throw ValidationError(
        "cost-benefit columns must be all present or all absent "
        "(cb00,cb01,cb10,cb11)");

  EvalDataset dataset;
  dataset.has_cb_columns = cb_present == 4;
  std::size_t row_number = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row_number;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() < header.size())
      throw ValidationError("row " + std::to_string(row_number) +
                            ": expected " + std::to_string(header.size()) +
                            " fields, got " + std::to_string(fields.size()));
    RankedRow row;
    row.y = parse_binary(fields[static_cast<std::size_t>(y_col)], "y",
                         row_number);
    row.t = parse_binary(fields[static_cast<std::size_t>(t_col)], "t",
                         row_number);
    row.score = parse_double(fields[static_cast<std::size_t>(score_col)],
                             "score", row_number);
    if (dataset.has_cb_columns) {
      row.cb.cb00 = parse_double(fields[static_cast<std::size_t>(cb_cols[0])],
                                 "cb00", row_number);
      row.cb.cb01 = parse_double(fields[static_cast<std::size_t>(cb_cols[1])],
                                 "cb01", row_number);
      row.cb.cb10 = parse_double(fields[static_cast<std::size_t>(cb_cols[2])],
                                 "cb10", row_number);
      row.cb.cb11 = parse_double(fields[static_cast<std::size_t>(cb_cols[3])],
                                 "cb11", row_number);
    } else {
      row.cb = CostBenefitMatrix::unitary();
    }
    dataset.rows.push_back(row);
  }
  if (dataset.rows.empty())
    throw ValidationError("no data rows in " + path.string());
  return dataset;
}

}  // namespace cprofit
