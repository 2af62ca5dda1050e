#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gabp::csv {

std::vector<std::string> split(const std::string& line, char delim = ',');

std::string trim(const std::string& s);

/// Shortest round-trip decimal representation (std::to_chars). Used for every
/// emitted CSV/JSON/SVG number so artifacts are byte-stable across runs.
std::string format(double v);

/// Parse a full double; returns false on trailing garbage or empty input.
bool parse_double(const std::string& s, double& out);

struct Doc {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads a whole CSV file as strings; no schema interpretation.
Doc read(const std::filesystem::path& path);

} // namespace gabp::csv
