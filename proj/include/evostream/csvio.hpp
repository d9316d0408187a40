#pragma once

#include <optional>
#include <string>
#include <vector>

namespace evostream {

// Shared "%.12g" rendering so every CSV writer is byte-stable across runs.
std::string fmt_double(double v);

std::string join_csv(const std::vector<std::string>& fields);

std::vector<std::string> split_csv_line(const std::string& line);

// Strict full-token parse; nullopt on any trailing garbage.
std::optional<double> parse_double(const std::string& cell);

// Throws input_error naming the path on open/write failure.
void write_text_file(const std::string& path, const std::string& content);

// Throws input_error naming the path if the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

}  // namespace evostream
