#ifndef SESSIONCOMM_CSV_HPP
#define SESSIONCOMM_CSV_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sessioncomm::csv {

/// Splits one line into fields. Double-quoted fields may contain commas and
/// doubled quotes. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_line(std::string_view line);

/// Quotes a field when it contains a comma, quote, or surrounding whitespace.
std::string escape(std::string_view field);

std::string_view trim(std::string_view s);
std::string_view strip_cr(std::string_view s);

bool valid_utf8(std::string_view s);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace sessioncomm::csv

#endif  // SESSIONCOMM_CSV_HPP
