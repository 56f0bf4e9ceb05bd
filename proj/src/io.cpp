#include "revmc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace revmc {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool looks_like_csv_header(const std::string& first_line) {
  for (const std::string& f : split_csv_row(first_line)) {
    std::string low = f;
    std::transform(low.begin(), low.end(), low.begin(), ::tolower);
    if (low == "state") return true;
  }
  return false;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> ingest(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw std::runtime_error("empty input " + path);

  std::string fmt = format;
  if (fmt == "auto") fmt = looks_like_csv_header(lines[0]) ? "csv" : "lines";

  std::vector<std::string> labels;
  if (fmt == "lines") {
    for (const std::string& line : lines) {
      std::string t = trim(line);
      if (!t.empty()) labels.push_back(t);
    }
  } else if (fmt == "csv") {
    std::vector<std::string> header = split_csv_row(lines[0]);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string low = header[i];
      std::transform(low.begin(), low.end(), low.begin(), ::tolower);
      if (low == "state") col = i;
    }
    if (col == header.size())
      throw std::runtime_error("csv input lacks a 'state' column: " + path);
    for (std::size_t r = 1; r < lines.size(); ++r) {
      if (trim(lines[r]).empty()) continue;
      std::vector<std::string> row = split_csv_row(lines[r]);
      if (row.size() != header.size())
        throw std::runtime_error("malformed csv row " + std::to_string(r + 1) + " in " +
                                 path);
      labels.push_back(row[col]);
    }
  } else {
    throw std::runtime_error("unknown input format: " + format);
  }
  if (labels.empty()) throw std::runtime_error("no states in " + path);
  return labels;
}

IngestStats ingest_stats(const std::vector<std::string>& labels) {
  IngestStats out;
  out.n_states = labels.size();
  out.n_transitions = labels.empty() ? 0 : labels.size() - 1;
  std::map<std::string, std::size_t> freq;
  for (const std::string& s : labels) ++freq[s];
  out.distinct = freq.size();
  for (const auto& [s, n] : freq)
    if (n == 1) ++out.singletons;
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string content_hash(const std::string& path) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(read_file(path))));
  return std::string(buf);
}

}  // namespace revmc
