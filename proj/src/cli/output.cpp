#include "fwm/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "fwm/errors.hpp"

namespace fwm::cli {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value + 0.0);
  return buf;
}

std::string config_header(const std::vector<std::string>& resolved, const std::string& title) {
  std::string out = "# " + title + "\n# resolved configuration:\n";
  for (const auto& line : resolved) out += "#   " + line + "\n";
  return out;
}

void write_atomic(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto target = dir / name;
  const auto temp = dir / (name + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + temp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write to '" + temp.string() + "' failed");
  }
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw IoError("cannot move '" + temp.string() + "' to '" + target.string() + "': " + ec.message());
  }
}

void Summary::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Summary::add(const std::string& key, double value) { add(key, format_number(value)); }

void Summary::add(const std::string& key, int value) { add(key, std::to_string(value)); }

std::string Summary::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    text_ += (i ? "," : "") + columns[i];
  }
  text_ += "\n";
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw ContractError("CSV row width does not match its header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_number(values[i]);
  }
  text_ += '\n';
}

std::string CsvWriter::str() const { return text_; }

}  // namespace fwm::cli
