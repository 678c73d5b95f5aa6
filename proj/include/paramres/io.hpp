#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace paramres {

/// FNV-1a 64-bit hash; stable across runs and platforms.
std::uint64_t fnv1a64(const std::string& data);

/// "0x" + 16 hex digits.
std::string hex_string(std::uint64_t value);

/// Locale-independent "%.12g" rendering used for all CSV numbers.
std::string format_double(double value);

/// CSV assembly with "#"-prefixed comment/header lines.
class CsvWriter {
public:
    void comment(const std::string& text);          ///< emits "# text"
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);
    void numeric_row(const std::vector<double>& cells);

    [[nodiscard]] const std::string& str() const { return buffer_; }
    void write_file(const std::string& path) const;

private:
    std::string buffer_;
};

}  // namespace paramres
