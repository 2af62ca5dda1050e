#include "gabp/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "gabp/error.hpp"

namespace gabp::csv {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == delim) {
            out.push_back(field);
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    out.push_back(field);
    return out;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string format(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size();
}

Doc read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::MalformedRow, "csv: cannot open " + path.string());
    Doc doc;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            doc.header = split(line);
            for (auto& h : doc.header) h = trim(h);
            first = false;
        } else {
            if (line.empty()) continue;
            doc.rows.push_back(split(line));
        }
    }
    if (first) fail(Errc::MalformedRow, "csv: empty file " + path.string());
    return doc;
}

} // namespace gabp::csv
