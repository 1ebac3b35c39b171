#include "becwh/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace becwh {

std::string format_double(double value) {
  if (std::isnan(value)) return {};
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return {buf, end};
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::separator() {
  if (column_ == columns_) throw std::logic_error("CsvWriter: too many cells in row");
  if (column_++ != 0) os_ << ',';
}

CsvWriter& CsvWriter::operator<<(double value) {
  separator();
  os_ << format_double(value);
  return *this;
}

CsvWriter& CsvWriter::operator<<(bool value) {
  separator();
  os_ << (value ? "true" : "false");
  return *this;
}

CsvWriter& CsvWriter::operator<<(int value) {
  separator();
  os_ << value;
  return *this;
}

void CsvWriter::end_row() {
  if (column_ != columns_) throw std::logic_error("CsvWriter: incomplete row");
  os_ << '\n';
  column_ = 0;
}

void write_csv(std::ostream& os, const std::vector<ProfileSample1D>& samples) {
  CsvWriter csv(os, kProfile1DColumns);
  for (const auto& p : samples) {
    csv << p.x << p.r << p.a_over_abg << p.a_over_100a0 << p.B << p.cs << p.valid;
    csv.end_row();
  }
}

void write_csv(std::ostream& os, const GpSolution& solution) {
  CsvWriter csv(os, kGpSolutionColumns);
  for (std::size_t i = 0; i < solution.size(); ++i) {
    csv << solution.radii[i] << solution.cs0[i] << solution.vr[i] << solution.residual1[i]
        << solution.residual2[i] << static_cast<bool>(solution.converged[i]);
    csv.end_row();
  }
}

void write_csv(std::ostream& os, const std::vector<ProfileSample3D>& samples) {
  CsvWriter csv(os, kProfile3DColumns);
  for (const auto& p : samples) {
    csv << p.x << p.r << p.cs0 << p.cs << p.B << p.a_over_abg << p.vr << p.valid
        << p.near_asymptote;
    csv.end_row();
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("CSV has no column '" + name + "'");
}

namespace {
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell) {
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (cell == "true") return 1.0;
  if (cell == "false") return 0.0;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw std::runtime_error("CSV: cannot parse cell '" + cell + "'");
  }
  return value;
}
}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("CSV: missing header");
  table.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) throw std::runtime_error("CSV: ragged row");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace becwh
