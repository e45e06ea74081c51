#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vm::csv {

// RFC 4180 quoting; rows terminated with '\n'. All files are UTF-8.

std::string escape(const std::string& field);
std::string join_row(const std::vector<std::string>& fields);

std::vector<std::vector<std::string>> parse(const std::string& text);
std::vector<std::vector<std::string>> parse_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace vm::csv
