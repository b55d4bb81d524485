#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace fwm::cli {

/// `%.9g` formatting used for every number written by the runner.
std::string format_number(double value);

/// Comment block (`# ...` lines) recording the resolved configuration.
std::string config_header(const std::vector<std::string>& resolved, const std::string& title);

/// Writes `content` to `dir/name` through a temporary file and a rename.
/// Throws IoError on failure.
void write_atomic(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content);

/// Ordered key = value report.
class Summary {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, int value);
  std::string str() const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// CSV builder; rows are appended as numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string text_;
};

}  // namespace fwm::cli
