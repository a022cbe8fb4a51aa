#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gravphase {

/// Shortest decimal text that round-trips to the same binary64 value.
std::string format_double(double v);

/// RFC-4180 field quoting: fields containing ',', '"', CR or LF are quoted, quotes doubled.
std::string csv_field(std::string_view field);

// CSV text with RFC-4180 quoting, "\n" line endings and a header row.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header);

    CsvWriter& field(std::string_view text);
    CsvWriter& field(double v);
    CsvWriter& field(std::int64_t v);
    void end_row();

    const std::string& str() const noexcept { return out_; }

private:
    std::string out_;
    bool row_open_ = false;
};

/// 64-bit FNV-1a over the bytes of `data`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

} // namespace gravphase
