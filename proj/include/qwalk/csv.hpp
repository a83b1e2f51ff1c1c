// =============================================================================
// csv.hpp
// Deterministic CSV output: comma separator, '.' decimal point, %.17g values
// (shortest round-trip-safe form for doubles), and the sentinels "inf",
// "-inf", "nan" as the only non-numeric tokens. Every file starts with a
// '#'-prefixed comment block carrying the fully resolved run configuration,
// then the header row. Byte-for-byte reproducible: no timestamps, locales,
// or thread counts ever reach the stream.
// =============================================================================
#pragma once

#include <string>
#include <vector>

namespace qwalk {

// One double -> token ("inf"/"-inf"/"nan" or %.17g).
std::string csv_token(double value);

class CsvWriter {
 public:
  // Opens (truncates) the file; throws invalid_input_error on I/O failure.
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void comment(const std::string& line);                 // "# <line>\n"
  void header(const std::vector<std::string>& columns);  // once, before rows
  void row(const std::vector<double>& values);
  void close();  // flushes; throws numerical_failure_error on write error

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace qwalk
