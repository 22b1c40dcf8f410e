#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace deltascat {

/// Provenance block written with every output file.
struct RunManifest {
  std::string toolVersion;
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> parameters;  // flag name -> value as given
  std::optional<std::uint64_t> masterSeed;
  std::string generatorIdentity;
  std::string timestampUtc;
  std::vector<std::pair<std::string, double>> results;  // derived scalars, e.g. fit outputs
};

/// Rectangular table of reals; every row has columnNames.size() entries.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columnNames);

  void addRow(std::vector<double> row);
  const std::vector<std::string>& columnNames() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

enum class OutputFormat { Csv, Json };

/// 17 significant digits, so the text parses back to the same double.
std::string formatReal(double v);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utcTimestamp();

/// CSV: "# key=value" manifest lines, the column header, then one line per row.
std::string toCsv(const OutputTable& table, const RunManifest& manifest);
/// JSON object {"manifest": {...}, "columns": [...], "rows": [[...], ...]}.
std::string toJson(const OutputTable& table, const RunManifest& manifest);

/// Throws std::runtime_error if the file cannot be written.
void writeTable(const std::string& path, const OutputTable& table, const RunManifest& manifest,
                OutputFormat format);

}  // namespace deltascat
