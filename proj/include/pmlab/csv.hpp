#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace pmlab {

// Deterministic shortest-roundtrip double formatting for CSV output.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Minimal RFC-4180-style writer: comma separated, header mandatory,
// '.' decimal separator (format_double is locale-independent).
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    void row_strings(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out_ << ',';
            out_ << cols[i];
        }
        out_ << "\r\n";
    }

    void row(const std::vector<double>& vals,
             const std::vector<std::string>& prefix = {}) {
        std::vector<std::string> cols = prefix;
        for (double v : vals) cols.push_back(format_double(v));
        row_strings(cols);
    }

  private:
    std::ofstream out_;
};

}  // namespace pmlab
