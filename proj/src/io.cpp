// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/io.hpp>

#include <rmt/version.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace rmt {

std::string file_header(const std::string& subcommand,
                        const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out = "# rmtk " + std::string(version_string) + " " + subcommand + "\n";
  for (const auto& [key, value] : params) out += "# " + key + "=" + value + "\n";
  return out;
}

std::string format_double(double x) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) break;
  }
  return buf;
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string out = "# ";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json rational_json(const Rational& q) {
  Rational r = q;
  r.canonicalize();
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
    throw std::overflow_error("rational_json: value exceeds 64-bit parts");
  return nlohmann::json{{"num", static_cast<std::int64_t>(r.get_num().get_si())},
                        {"den", static_cast<std::int64_t>(r.get_den().get_si())}};
}

nlohmann::json parse_json_with_header(const std::string& text) {
  std::istringstream in(text);
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#' && body.empty()) continue;
    body += line;
    body += '\n';
  }
  return nlohmann::json::parse(body);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input path: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace rmt
