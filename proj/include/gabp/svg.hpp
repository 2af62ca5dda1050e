#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gabp::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
};

// Minimal polyline chart; the CSV files are the contract, this is a
// convenience view of the same data.
void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<Series>& series, int width = 900, int height = 380);

} // namespace gabp::svg
