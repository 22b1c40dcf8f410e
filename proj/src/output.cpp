#include "deltascat/output.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "deltascat/errors.hpp"

namespace deltascat {

OutputTable::OutputTable(std::vector<std::string> columnNames) : columns_(std::move(columnNames)) {
  if (columns_.empty()) throw ArgumentError("output table needs at least one column");
}

void OutputTable::addRow(std::vector<double> row) {
  if (row.size() != columns_.size()) {
    throw ArgumentError("row has " + std::to_string(row.size()) + " entries, table has " +
                        std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(row));
}

std::string formatReal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utcTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string toCsv(const OutputTable& table, const RunManifest& manifest) {
  std::ostringstream os;
  os << "# toolVersion=" << manifest.toolVersion << '\n';
  os << "# subcommand=" << manifest.subcommand << '\n';
  for (const auto& [key, value] : manifest.parameters) os << "# param." << key << '=' << value << '\n';
  if (manifest.masterSeed) os << "# masterSeed=" << *manifest.masterSeed << '\n';
  if (!manifest.generatorIdentity.empty()) os << "# generator=" << manifest.generatorIdentity << '\n';
  os << "# timestampUtc=" << manifest.timestampUtc << '\n';
  for (const auto& [key, value] : manifest.results) os << "# result." << key << '=' << formatReal(value) << '\n';

  const auto& cols = table.columnNames();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << formatReal(row[i]);
    os << '\n';
  }
  return os.str();
}

namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return formatReal(v);  // "inf", "-inf", "nan"
}

}  // namespace

std::string toJson(const OutputTable& table, const RunManifest& manifest) {
  nlohmann::ordered_json m;
  m["toolVersion"] = manifest.toolVersion;
  m["subcommand"] = manifest.subcommand;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.parameters) params[key] = value;
  m["parameters"] = params;
  if (manifest.masterSeed) m["masterSeed"] = *manifest.masterSeed;
  if (!manifest.generatorIdentity.empty()) m["generatorIdentity"] = manifest.generatorIdentity;
  m["timestampUtc"] = manifest.timestampUtc;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.results) results[key] = number(value);
  m["results"] = results;

  nlohmann::ordered_json doc;
  doc["manifest"] = m;
  doc["columns"] = table.columnNames();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double v : row) r.push_back(number(v));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void writeTable(const std::string& path, const OutputTable& table, const RunManifest& manifest,
                OutputFormat format) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << (format == OutputFormat::Csv ? toCsv(table, manifest) : toJson(table, manifest));
  if (!file) throw std::runtime_error("failed writing output file " + path);
}

}  // namespace deltascat
