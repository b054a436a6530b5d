#include "noisy_barrier/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace noisy_barrier {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) cell(c);
  end_row();
}

void CsvWriter::separator() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  separator();
  out_ << text;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(std::uint64_t v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) cell(v(i));
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

namespace {

void append_indexed(std::vector<std::string>& cols, const std::string& stem,
                    Index n) {
  for (Index i = 1; i <= n; ++i) cols.push_back(stem + "_" + std::to_string(i));
}

}  // namespace

std::vector<std::string> trajectory_columns(Index n) {
  std::vector<std::string> cols{"outer", "inner", "mu"};
  append_indexed(cols, "x", n);
  append_indexed(cols, "z", n);
  for (const char* name :
       {"alpha", "alpha_max", "alpha_dual", "lambda", "f_evals",
        "grad_tilde_norm", "grad_tilde_scaled", "sigma_min_G", "t1", "t2",
        "nu_k", "cond_i", "cond_ii", "c1", "c2", "nu_hat1", "nu_hat2",
        "halvings", "phi", "phi_trial", "armijo_lhs", "armijo_rhs",
        "compl_inf", "true_grad_norm", "beta", "kkt_residual_primal",
        "kkt_residual_dual"}) {
    cols.emplace_back(name);
  }
  append_indexed(cols, "d", n);
  append_indexed(cols, "grad_tilde", n);
  append_indexed(cols, "true_grad", n);
  return cols;
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  CsvWriter w(out);
  w.header(trajectory_columns(trajectory.x.size()));
  for (const IterateRecord& r : trajectory.records) {
    w.cell(r.outer).cell(r.inner).cell(r.mu).cell(r.x).cell(r.z);
    w.cell(r.alpha).cell(r.alpha_max).cell(r.alpha_dual).cell(r.lambda);
    w.cell(r.f_evals).cell(r.grad_tilde_norm).cell(r.grad_tilde_scaled);
    w.cell(r.sigma_min_G).cell(r.t1).cell(r.t2).cell(r.nu_k);
    w.cell(r.cond_i).cell(r.cond_ii).cell(r.c1).cell(r.c2);
    w.cell(r.nu_hat1).cell(r.nu_hat2).cell(r.halvings);
    w.cell(r.phi).cell(r.phi_trial).cell(r.armijo_lhs).cell(r.armijo_rhs);
    w.cell(r.compl_inf).cell(r.true_grad_norm).cell(r.beta);
    w.cell(r.kkt_residual_primal).cell(r.kkt_residual_dual);
    w.cell(r.direction).cell(r.grad_tilde).cell(r.true_grad);
    w.end_row();
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  table.header = split(line);
  while (std::getline(in, line)) {
    auto row = split(line);
    if (row.size() != table.header.size()) {
      throw std::runtime_error("read_csv: row " +
                               std::to_string(table.rows.size() + 1) + " has " +
                               std::to_string(row.size()) + " fields, expected " +
                               std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace noisy_barrier
