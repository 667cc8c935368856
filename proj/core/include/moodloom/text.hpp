#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace moodloom::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);
bool ends_with(std::string_view s, std::string_view suffix);

/// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string> split_lines(std::string_view s);

/// Lowercase ASCII, runs of non-alphanumerics collapsed to '-'. Used for
/// fixture and lyric file names.
std::string slug(std::string_view s);

std::string read_file(const std::string& path);

}  // namespace moodloom::text
