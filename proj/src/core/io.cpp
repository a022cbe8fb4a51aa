#include "gravphase/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "gravphase/error.hpp"

namespace gravphase {

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw Error(Errc::invalid_quantity, "cannot format a non-finite value");
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
    for (const auto& h : header) {
        field(h);
    }
    end_row();
}

CsvWriter& CsvWriter::field(std::string_view text) {
    if (row_open_) {
        out_ += ',';
    }
    out_ += csv_field(text);
    row_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

CsvWriter& CsvWriter::field(std::int64_t v) { return field(std::to_string(v)); }

void CsvWriter::end_row() {
    out_ += '\n';
    row_open_ = false;
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace gravphase
