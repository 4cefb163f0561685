#include "gvsa/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gvsa/errors.hpp"

namespace gvsa {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

MultivariateSignal ingest_csv(const std::string& path, double sample_rate) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_line(line));
  }
  if (rows.size() < 2) throw IoError(path + ": fewer than 2 data rows");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw IoError(path + ": ragged row " + std::to_string(r + 1));
    }
  }

  double tmp = 0.0;
  // A header row / label column is whatever fails to parse as numbers. The
  // first cell is skipped for header detection: in a label column without a
  // header it is a row label, not a column name.
  bool header = false;
  for (std::size_t cidx = 1; cidx < width; ++cidx) {
    if (!parse_double(rows.front()[cidx], tmp)) {
      header = true;
      break;
    }
  }
  const std::size_t first_row = header ? 1 : 0;
  if (rows.size() - first_row < 2) throw IoError(path + ": fewer than 2 data rows");

  bool labels = false;
  for (std::size_t r = first_row; r < rows.size(); ++r) {
    if (!parse_double(rows[r].front(), tmp)) {
      labels = true;
      break;
    }
  }
  const std::size_t first_col = labels ? 1 : 0;
  if (width - first_col < 2) throw IoError(path + ": fewer than 2 data columns");

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size() - first_row);
  const Eigen::Index p = static_cast<Eigen::Index>(width - first_col);
  Eigen::MatrixXd data(n, p);
  std::vector<std::string> node_labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[first_row + i];
    if (labels) node_labels.push_back(row.front());
    for (Eigen::Index j = 0; j < p; ++j) {
      if (!parse_double(row[first_col + j], data(i, j))) {
        throw IoError(path + ": non-numeric cell in row " +
                      std::to_string(first_row + i + 1));
      }
    }
  }
  return MultivariateSignal(std::move(data), sample_rate, std::move(node_labels));
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& row_labels) {
  if (!row_labels.empty() &&
      static_cast<Eigen::Index>(row_labels.size()) != matrix.rows()) {
    throw ConfigError("write_matrix_csv: label count mismatch");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    if (!row_labels.empty()) out << row_labels[i] << ',';
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j) out << ',';
      out << format_double(matrix(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_signal_csv(const std::string& path, const MultivariateSignal& signal) {
  write_matrix_csv(path, signal.data(), signal.node_labels());
}

}  // namespace gvsa
