#ifndef GVSA_CSV_HPP
#define GVSA_CSV_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gvsa/signal.hpp"

namespace gvsa {

/// Shortest representation that round-trips a double exactly (%.17g).
std::string format_double(double value);

/// Reads a rectangular numeric table: rows = nodes, columns = samples.
/// A leading header row and/or a leading label column are auto-detected by
/// non-numeric content. Throws IoError on missing files, ragged rows, or
/// non-numeric payload cells.
MultivariateSignal ingest_csv(const std::string& path, double sample_rate);

/// Writes a matrix as CSV with full round-trip precision; optional row
/// labels become a leading column.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& row_labels = {});

void write_signal_csv(const std::string& path, const MultivariateSignal& signal);

}  // namespace gvsa

#endif
