#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "becwh/gp3d.hpp"
#include "becwh/profile1d.hpp"
#include "becwh/profile3d.hpp"

namespace becwh {

/// Shortest decimal string that round-trips to the same double. NaN is
/// rendered as the empty string (missing value in CSV).
std::string format_double(double value);

/// One CSV table; rows are written on demand so huge grids never sit twice
/// in memory.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(bool value);
  CsvWriter& operator<<(int value);
  void end_row();

 private:
  void separator();
  std::ostream& os_;
  std::size_t columns_;
  std::size_t column_ = 0;
};

inline const std::vector<std::string> kProfile1DColumns = {
    "x_um", "r_um", "a_over_abg", "a_over_100a0", "B_gauss", "cs_m_per_s", "valid"};
inline const std::vector<std::string> kGpSolutionColumns = {
    "r_um", "cs0_m_per_s", "vr_m_per_s", "res1", "res2", "converged"};
inline const std::vector<std::string> kProfile3DColumns = {
    "x_um", "r_um", "cs0_m_per_s", "cs_m_per_s", "B_gauss",
    "a_over_abg", "vr_m_per_s", "valid", "near_asymptote"};

void write_csv(std::ostream& os, const std::vector<ProfileSample1D>& samples);
void write_csv(std::ostream& os, const GpSolution& solution);
void write_csv(std::ostream& os, const std::vector<ProfileSample3D>& samples);

/// Reads a CSV written by one of the writers above: header line plus rows
/// of numeric cells (empty cell = NaN, true/false = 1/0).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t column(const std::string& name) const;
};
CsvTable read_csv(std::istream& is);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace becwh
