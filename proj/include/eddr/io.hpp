#pragma once

#include <map>
#include <string>

#include "eddr/linalg.hpp"

namespace eddr {

enum class HeaderMode { Auto, Present, Absent };

// Comma separated, '.' decimal. With Auto, a first row that does not parse as
// numbers is taken as a header. An empty file yields a 0 x 0 matrix.
// Throws DataError naming the offending row and column.
Matrix read_csv(const std::string& path, HeaderMode header = HeaderMode::Auto);
Matrix parse_csv(const std::string& text, HeaderMode header = HeaderMode::Auto,
                 const std::string& source = "<input>");

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(const std::string& text,
                                                const std::string& source = "<config>");

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

// printf %.{digits}g
std::string format_sig(double x, int digits = 6);

}  // namespace eddr
