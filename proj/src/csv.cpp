#include "sustain/csv.hpp"

#include <cerrno>
#include <cstdlib>

#include "sustain/common.hpp"
#include "sustain/errors.hpp"

namespace sustain {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
        out.back().pop_back();
    return out;
}

std::int64_t parse_int_field(const std::string& s, std::size_t line_no) {
    if (s.empty()) throw MalformedRow(line_no, "empty integer field");
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size())
        throw MalformedRow(line_no, "not an integer: '" + s + "'");
    return v;
}

std::uint64_t parse_uint64_field(const std::string& s, std::size_t line_no) {
    if (s.empty()) throw MalformedRow(line_no, "empty integer field");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size())
        throw MalformedRow(line_no, "not an unsigned integer: '" + s + "'");
    return v;
}

double parse_double_field(const std::string& s, std::size_t line_no) {
    if (s.empty()) throw MalformedRow(line_no, "empty numeric field");
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size())
        throw MalformedRow(line_no, "not a number: '" + s + "'");
    return v;
}

CsvReader::CsvReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw IoError("cannot open " + path);
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (!line.empty() && line[0] == '#') continue;
        header_ = split_csv_line(line);
        return;
    }
    throw EmptyInput("no header row in " + path);
}

int CsvReader::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return static_cast<int>(i);
    return -1;
}

std::size_t CsvReader::require_column(const std::string& name) const {
    int idx = column(name);
    if (idx < 0)
        throw MalformedRow(1, "missing required column '" + name + "' in " + path_);
    return static_cast<std::size_t>(idx);
}

bool CsvReader::next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line.empty() || line[0] == '#') continue;
        fields = split_csv_line(line);
        if (fields.size() != header_.size())
            throw MalformedRow(line_no_, "expected " + std::to_string(header_.size()) +
                                             " fields, got " + std::to_string(fields.size()));
        return true;
    }
    return false;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& provenance,
                     const std::vector<std::string>& header)
    : path_(path), out_(path), n_cols_(header.size()) {
    if (!out_) throw IoError("cannot write " + path);
    if (!provenance.empty()) out_ << "# " << provenance << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << header[i] << (i + 1 < header.size() ? "," : "");
    out_ << "\n";
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
    if (fields.size() != n_cols_)
        throw Error("row width mismatch writing " + path_);
    for (std::size_t i = 0; i < fields.size(); ++i)
        out_ << fields[i] << (i + 1 < fields.size() ? "," : "");
    out_ << "\n";
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + path_);
}

std::string provenance_line(const std::string& params) {
    return std::string("sustain ") + kToolVersion + " " + params;
}

}  // namespace sustain
