#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace alm {

// Fixed-format CSV emission: floats printed with 9 significant digits so
// repeated runs produce byte-identical files.
std::string csv_number(double v);

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
};

} // namespace alm
