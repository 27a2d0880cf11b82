#include "dqpt/series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dqpt/errors.hpp"

namespace dqpt {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SeriesTable::SeriesTable(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void SeriesTable::add_metadata(const std::string& key, const std::string& value) {
    metadata_.emplace_back(key, value);
}

void SeriesTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
        throw ConfigError("SeriesTable: row width does not match column count");
    for (double v : values) {
        if (!std::isfinite(v)) {
            ++masked_;
            return;
        }
    }
    rows_.push_back(values);
}

std::string SeriesTable::to_csv() const {
    std::ostringstream os;
    os << "# series: " << name_ << "\n";
    for (const auto& [k, v] : metadata_) os << "# " << k << ": " << v << "\n";
    os << "# masked_rows: " << masked_ << "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c)
        os << columns_[c] << (c + 1 < columns_.size() ? "," : "");
    os << "\n";
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << format_double(row[c]) << (c + 1 < row.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

void SeriesTable::write_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("SeriesTable: cannot open for writing: " + path);
    f << to_csv();
}

}  // namespace dqpt
