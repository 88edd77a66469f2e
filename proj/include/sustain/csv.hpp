#ifndef SUSTAIN_CSV_HPP
#define SUSTAIN_CSV_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace sustain {

// Minimal CSV support for the pipeline's flat artifacts. Fields are
// comma-separated and must not themselves contain commas; all schemas
// written by this tool satisfy that. Lines starting with '#' are
// provenance comments and are skipped.
class CsvReader {
public:
    explicit CsvReader(const std::string& path);

    // Header returns the column names of the first non-comment row.
    const std::vector<std::string>& header() const { return header_; }

    // Column index by name, -1 if absent.
    int column(const std::string& name) const;

    // Index of a required column; throws MalformedRow naming the column.
    std::size_t require_column(const std::string& name) const;

    // Reads the next data row into fields; returns false at EOF.
    bool next(std::vector<std::string>& fields);

    std::size_t line_no() const { return line_no_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
    std::vector<std::string> header_;
    std::size_t line_no_ = 0;
};

class CsvWriter {
public:
    // Opens path for writing; provenance (if non-empty) is emitted as a
    // leading '#' comment line, then the header row.
    CsvWriter(const std::string& path, const std::string& provenance,
              const std::vector<std::string>& header);

    void write_row(const std::vector<std::string>& fields);
    void close();

private:
    std::string path_;
    std::ofstream out_;
    std::size_t n_cols_;
};

std::vector<std::string> split_csv_line(const std::string& line);

// Strict numeric field parsers; throw MalformedRow on garbage.
std::int64_t parse_int_field(const std::string& s, std::size_t line_no);
std::uint64_t parse_uint64_field(const std::string& s, std::size_t line_no);
double parse_double_field(const std::string& s, std::size_t line_no);

// Provenance line content shared by all artifacts: tool version plus the
// full parameter tuple of the producing stage.
std::string provenance_line(const std::string& params);

}  // namespace sustain

#endif
