#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace feq::cli {

/// Rectangular CSV table with a '#' metadata header.
class ResultTable {
public:
    explicit ResultTable(std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    void add_row(const std::vector<double>& values);
    void add_meta(std::string line);

    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
    [[nodiscard]] const std::vector<std::string>& meta() const noexcept { return meta_; }

    void write_csv(std::ostream& out) const;
    void write_csv(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> meta_;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// UTC ISO-8601 time from SOURCE_DATE_EPOCH if set, else the wall clock.
std::string generated_timestamp();

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace feq::cli
