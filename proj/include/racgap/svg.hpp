#pragma once

#include <string>
#include <utility>
#include <vector>

namespace racgap {

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal static line chart with optional horizontal reference lines.
// Plotting is cosmetic; the CSV files are the contract.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series,
                      const std::vector<std::pair<std::string, double>>& ref_lines = {});

}  // namespace racgap
