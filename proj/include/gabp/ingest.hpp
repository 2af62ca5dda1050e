#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gabp::ingest {

/// Raw daily table as loaded from disk: gaps (empty CSV cells) are preserved
/// as missing values. Dates are strictly increasing ISO-8601 strings.
struct RawTable {
    std::vector<std::string> dates;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> cells; // [col][row]

    Eigen::Index rows() const { return static_cast<Eigen::Index>(dates.size()); }
    Eigen::Index cols() const { return static_cast<Eigen::Index>(columns.size()); }
    Eigen::Index col_index(const std::string& name) const; // throws SchemaMismatch
};

enum class CellFlag : std::uint8_t { Original = 0, Interpolated = 1, OutlierReplaced = 2 };

/// Gap-free table with per-cell provenance flags.
struct PriceTable {
    std::vector<std::string> dates;
    std::vector<std::string> columns;
    Eigen::MatrixXd values;                                      // rows x cols
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> flags; // same shape

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index col_index(const std::string& name) const; // throws SchemaMismatch
    Eigen::VectorXd col(const std::string& name) const { return values.col(col_index(name)); }
};

/// Load a CSV whose header is exactly `date,<schema...>`. Empty cells map to
/// missing values. Errors: SchemaMismatch, MalformedRow (with line number),
/// DuplicateDate, NonMonotonicDate.
RawTable load_csv(const std::filesystem::path& path, const std::vector<std::string>& schema);

/// Fill interior gaps by linear interpolation between the nearest present
/// neighbors; filled cells are flagged Interpolated. A leading or trailing
/// gap is an EdgeGap error.
PriceTable interpolate_missing(const RawTable& t);

/// Replace cells farther than z_threshold sample standard deviations from the
/// column mean (statistics computed once, on the input) by interpolating the
/// nearest in-threshold neighbors. Replaced cells are flagged OutlierReplaced.
PriceTable repair_outliers(const PriceTable& t, double z_threshold = 5.0);

} // namespace gabp::ingest
