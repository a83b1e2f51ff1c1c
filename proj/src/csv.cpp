// =============================================================================
// csv.cpp
// Deterministic CSV writing (see csv.hpp for the format contract).
// =============================================================================
#include "qwalk/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qwalk/types.hpp"

namespace qwalk {

std::string csv_token(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

struct CsvWriter::Impl {
  std::ofstream out;
  bool header_written = false;
  size_t columns = 0;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) {
    delete impl_;
    throw invalid_input_error("CsvWriter: cannot open '" + path + "' for writing");
  }
}

CsvWriter::~CsvWriter() {
  delete impl_;  // best-effort flush; close() reports errors
}

void CsvWriter::comment(const std::string& line) {
  if (impl_->header_written)
    throw invalid_input_error("CsvWriter: comments must precede the header");
  impl_->out << "# " << line << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  if (impl_->header_written) throw invalid_input_error("CsvWriter: header already written");
  if (columns.empty()) throw invalid_input_error("CsvWriter: header needs at least one column");
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << columns[i];
  }
  impl_->out << "\n";
  impl_->header_written = true;
  impl_->columns = columns.size();
}

void CsvWriter::row(const std::vector<double>& values) {
  if (!impl_->header_written)
    throw invalid_input_error("CsvWriter: header must be written before rows");
  if (values.size() != impl_->columns)
    throw invalid_input_error("CsvWriter: row width does not match the header");
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << csv_token(values[i]);
  }
  impl_->out << "\n";
}

void CsvWriter::close() {
  impl_->out.flush();
  if (impl_->out.fail())
    throw numerical_failure_error("CsvWriter: write failed (disk full or closed stream?)");
  impl_->out.close();
}

}  // namespace qwalk
