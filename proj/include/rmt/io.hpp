// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/rational.hpp>

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace rmt {

/// "# rmtk <version> <subcommand>" plus one "# key=value" line per entry, in
/// the given order, each LF-terminated. Every emitted file starts with this.
std::string file_header(const std::string& subcommand,
                        const std::vector<std::pair<std::string, std::string>>& params);

/// Comment line of column names followed by one ','-joined row per line;
/// numbers use the shortest round-trip form with '.' decimal point.
std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double x);

/// {"num": p, "den": q}; throws std::overflow_error when either part
/// exceeds the signed 64-bit range.
nlohmann::json rational_json(const Rational& q);

/// Parses JSON after stripping any leading '#' comment lines, so files
/// produced with file_header round-trip.
nlohmann::json parse_json_with_header(const std::string& text);

/// Writes content to path, or to stdout when path is empty or "-". Throws
/// std::runtime_error when the file cannot be opened or written.
void write_output(const std::string& path, const std::string& content);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_text_file(const std::string& path);

} // namespace rmt
