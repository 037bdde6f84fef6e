#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ymlab {

// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);

// Comma-separated, '.' decimal point, header first, LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::string str() const;

private:
    std::size_t columns_;
    std::string text_;
};

// Writes via a temporary sibling file and rename(), so the target path never
// holds a partial file. Throws IoError.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace ymlab
