#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace nvspin {

/// Malformed input file; carries the 1-based line number when known.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Shortest round-trip decimal representation ('.' separator, locale independent).
std::string format_number(double v);

/// Strict full-string parse; throws FormatError naming `what` on failure.
double parse_number(const std::string& text, const std::string& what, int line = 0);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> row_lines;  ///< source line of each row

    /// Column index or -1.
    int column(const std::string& name) const;
};

/// Header row mandatory; blank lines skipped; fields are trimmed, no quoting.
CsvTable read_csv(std::istream& in);

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace nvspin
