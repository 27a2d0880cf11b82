#ifndef DQPT_SERIES_HPP
#define DQPT_SERIES_HPP

#include <string>
#include <utility>
#include <vector>

namespace dqpt {

inline constexpr const char* artifact_version = "0.1.0";

// One sampled output series destined for a CSV file. Rows containing
// NaN/Inf are dropped at insertion and counted in the metadata.
class SeriesTable {
  public:
    SeriesTable(std::string name, std::vector<std::string> columns);

    const std::string& name() const { return name_; }
    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_masked() const { return masked_; }
    const std::vector<double>& row(std::size_t i) const { return rows_[i]; }

    void add_metadata(const std::string& key, const std::string& value);
    void add_row(const std::vector<double>& values);

    // '#'-prefixed metadata block, header line, then one row per line.
    // Numbers printed with %.17g: byte-identical across runs of one build.
    void write_csv(const std::string& path) const;
    std::string to_csv() const;

  private:
    std::string name_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> metadata_;
    std::size_t masked_ = 0;
};

std::string format_double(double v);

}  // namespace dqpt

#endif
