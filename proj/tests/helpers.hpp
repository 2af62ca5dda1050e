#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gabp/error.hpp"
#include "gabp/ingest.hpp"

#define CHECK_ERRC(expr, errc)                                                                 \
    do {                                                                                       \
        bool caught_ = false;                                                                  \
        try {                                                                                  \
            (void)(expr);                                                                      \
        } catch (const gabp::Error& e_) {                                                      \
            caught_ = true;                                                                    \
            CHECK(e_.code() == (errc));                                                        \
        }                                                                                      \
        CHECK_MESSAGE(caught_, "expected error " << gabp::errc_name(errc));                    \
    } while (0)

namespace test_helpers {

inline std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "gabp_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::string& name, const std::string& content) {
    const auto path = temp_dir() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

/// Gap-free PriceTable straight from in-memory columns (all flags Original).
inline gabp::ingest::PriceTable
make_table(std::vector<std::string> dates,
           const std::vector<std::pair<std::string, Eigen::VectorXd>>& cols) {
    gabp::ingest::PriceTable t;
    t.dates = std::move(dates);
    const auto rows = static_cast<Eigen::Index>(t.dates.size());
    t.values.resize(rows, static_cast<Eigen::Index>(cols.size()));
    t.flags.setZero(rows, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        t.columns.push_back(cols[j].first);
        t.values.col(static_cast<Eigen::Index>(j)) = cols[j].second;
    }
    return t;
}

inline std::vector<std::string> sequential_dates(int n) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    unsigned year = 2020, month = 1, day = 1;
    for (int i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04u-%02u-%02u", year % 10000, month % 100, day % 100);
        out.emplace_back(buf);
        if (++day > 28) {
            day = 1;
            if (++month > 12) {
                month = 1;
                ++year;
            }
        }
    }
    return out;
}

} // namespace test_helpers
