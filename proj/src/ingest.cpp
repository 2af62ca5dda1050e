#include "gabp/ingest.hpp"

#include <cmath>

#include "gabp/csv.hpp"
#include "gabp/dates.hpp"
#include "gabp/error.hpp"

namespace gabp::ingest {

namespace {

Eigen::Index find_column(const std::vector<std::string>& columns, const std::string& name) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<Eigen::Index>(i);
    fail(Errc::SchemaMismatch, "ingest: no column named '" + name + "'");
}

} // namespace

Eigen::Index RawTable::col_index(const std::string& name) const {
    return find_column(columns, name);
}

Eigen::Index PriceTable::col_index(const std::string& name) const {
    return find_column(columns, name);
}

RawTable load_csv(const std::filesystem::path& path, const std::vector<std::string>& schema) {
    const csv::Doc doc = csv::read(path);

    std::vector<std::string> expected = {"date"};
    expected.insert(expected.end(), schema.begin(), schema.end());
    if (doc.header != expected) {
        std::string want;
        for (const auto& c : expected) want += (want.empty() ? "" : ",") + c;
        std::string got;
        for (const auto& c : doc.header) got += (got.empty() ? "" : ",") + c;
        fail(Errc::SchemaMismatch,
             "ingest: header mismatch in " + path.string() + " (want '" + want + "', got '" +
                 got + "')");
    }

    RawTable t;
    t.columns = schema;
    t.cells.assign(schema.size(), {});
    if (doc.rows.empty())
        fail(Errc::EmptyInput, "ingest: no data rows in " + path.string());

    std::size_t line_no = 1; // header was line 1
    for (const auto& row : doc.rows) {
        ++line_no;
        if (row.size() != expected.size())
            fail(Errc::MalformedRow, "ingest: line " + std::to_string(line_no) + ": expected " +
                                         std::to_string(expected.size()) + " fields, got " +
                                         std::to_string(row.size()));

        const std::string date = csv::trim(row[0]);
        dates::Civil c;
        if (!dates::parse_iso(date, c))
            fail(Errc::MalformedRow,
                 "ingest: line " + std::to_string(line_no) + ": bad date '" + date + "'");
        if (!t.dates.empty()) {
            if (date == t.dates.back())
                fail(Errc::DuplicateDate,
                     "ingest: line " + std::to_string(line_no) + ": duplicate date " + date);
            if (date < t.dates.back()) // lexicographic == chronological for ISO dates
                fail(Errc::NonMonotonicDate, "ingest: line " + std::to_string(line_no) +
                                                 ": date " + date + " not after " +
                                                 t.dates.back());
        }
        t.dates.push_back(date);

        for (std::size_t j = 0; j < schema.size(); ++j) {
            const std::string cell = csv::trim(row[j + 1]);
            if (cell.empty()) {
                t.cells[j].push_back(std::nullopt);
            } else {
                double v;
                if (!csv::parse_double(cell, v))
                    fail(Errc::MalformedRow, "ingest: line " + std::to_string(line_no) +
                                                 ": bad number '" + cell + "' in column " +
                                                 schema[j]);
                t.cells[j].push_back(v);
            }
        }
    }
    return t;
}

PriceTable interpolate_missing(const RawTable& t) {
    const Eigen::Index rows = t.rows();
    const Eigen::Index cols = t.cols();

    PriceTable out;
    out.dates = t.dates;
    out.columns = t.columns;
    out.values.resize(rows, cols);
    out.flags.setConstant(rows, cols, static_cast<std::uint8_t>(CellFlag::Original));

    for (Eigen::Index j = 0; j < cols; ++j) {
        const auto& col = t.cells[static_cast<std::size_t>(j)];
        if (rows > 0 && (!col.front().has_value() || !col.back().has_value()))
            fail(Errc::EdgeGap, "ingest: column '" + t.columns[static_cast<std::size_t>(j)] +
                                    "' has a leading or trailing gap");
        Eigen::Index i = 0;
        while (i < rows) {
            if (col[static_cast<std::size_t>(i)].has_value()) {
                out.values(i, j) = *col[static_cast<std::size_t>(i)];
                ++i;
                continue;
            }
            // run of missing cells [i, k); both bounds exist by the edge check
            Eigen::Index k = i;
            while (!col[static_cast<std::size_t>(k)].has_value()) ++k;
            const double left = *col[static_cast<std::size_t>(i - 1)];
            const double right = *col[static_cast<std::size_t>(k)];
            const double span = static_cast<double>(k - (i - 1));
            for (Eigen::Index g = i; g < k; ++g) {
                out.values(g, j) = left + (right - left) * static_cast<double>(g - (i - 1)) / span;
                out.flags(g, j) = static_cast<std::uint8_t>(CellFlag::Interpolated);
            }
            i = k;
        }
    }
    return out;
}

PriceTable repair_outliers(const PriceTable& t, double z_threshold) {
    const Eigen::Index rows = t.rows();
    const Eigen::Index cols = t.values.cols();
    PriceTable out = t;

    for (Eigen::Index j = 0; j < cols; ++j) {
        const Eigen::VectorXd col = t.values.col(j);
        const double mean = col.mean();
        const double var = (col.array() - mean).square().sum() / static_cast<double>(rows - 1);
        const double sd = std::sqrt(var);
        if (!(sd > 0.0))
            fail(Errc::DegenerateColumn, "ingest: column '" +
                                             t.columns[static_cast<std::size_t>(j)] +
                                             "' has zero variance");

        std::vector<bool> flagged(static_cast<std::size_t>(rows), false);
        bool any_clean = false;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (std::abs(col[i] - mean) > z_threshold * sd)
                flagged[static_cast<std::size_t>(i)] = true;
            else
                any_clean = true;
        }
        if (!any_clean)
            fail(Errc::DegenerateColumn, "ingest: every cell of column '" +
                                             t.columns[static_cast<std::size_t>(j)] +
                                             "' exceeds the outlier threshold");

        for (Eigen::Index i = 0; i < rows; ++i) {
            if (!flagged[static_cast<std::size_t>(i)]) continue;
            Eigen::Index lo = i - 1;
            while (lo >= 0 && flagged[static_cast<std::size_t>(lo)]) --lo;
            Eigen::Index hi = i + 1;
            while (hi < rows && flagged[static_cast<std::size_t>(hi)]) ++hi;

            double v;
            if (lo >= 0 && hi < rows) {
                const double left = col[lo];
                const double right = col[hi];
                v = left + (right - left) * static_cast<double>(i - lo) /
                               static_cast<double>(hi - lo);
            } else if (lo >= 0) {
                v = col[lo];
            } else {
                v = col[hi];
            }
            out.values(i, j) = v;
            out.flags(i, j) = static_cast<std::uint8_t>(CellFlag::OutlierReplaced);
        }
    }
    return out;
}

} // namespace gabp::ingest
