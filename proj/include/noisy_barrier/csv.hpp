#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "noisy_barrier/solver.hpp"

namespace noisy_barrier {

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);

/// Writes comma-separated rows terminated by a bare LF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::uint64_t v);
  CsvWriter& cell(bool v) { return cell(static_cast<long long>(v ? 1 : 0)); }
  CsvWriter& cell(const Vector& v);
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_started_ = false;
};

/// Column names of the trajectory CSV for dimension n.
std::vector<std::string> trajectory_columns(Index n);

void write_trajectory(std::ostream& out, const Trajectory& trajectory);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Plain split on commas and LF; throws std::runtime_error on ragged rows.
CsvTable read_csv(std::istream& in);

}  // namespace noisy_barrier
