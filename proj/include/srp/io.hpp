#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "srp/errors.hpp"

namespace srp::io {

/// Fixed-format double for CSV/JSON artifacts: %.15g, C locale, 15
/// significant digits, deterministic for identical inputs.
std::string format_g(double v);

/// CSV with '#'-prefixed provenance comment lines, one header row and
/// %.15g data cells.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void comment(const std::string& line);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);

private:
    std::ofstream out_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace srp::io
