#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fairsub::csv {

using Record = std::vector<std::string>;

/// Parses RFC-4180 text: comma separated, '"' quoting with doubled quotes as
/// escape, CRLF or LF line endings, quoted fields may span lines. A trailing
/// newline does not produce an empty record.
[[nodiscard]] std::vector<Record> parse(std::string_view text);

[[nodiscard]] std::vector<Record> read_file(const std::string& path);

/// Quotes a field only when it contains a comma, quote, CR or LF.
[[nodiscard]] std::string escape(std::string_view field);

void write_record(std::ostream& out, const Record& record);

}  // namespace fairsub::csv
