#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

// Two-column CSV with a header row; '#'-prefixed rows are skipped.
inline std::vector<std::pair<double, double>> read_csv2(const std::string& name) {
    std::ifstream f(std::string(ZLADDER_TEST_DATA) + "/" + name);
    if (!f) throw std::runtime_error("missing test data: " + name);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)),
                          std::stod(line.substr(comma + 1)));
    }
    return rows;
}

// '#'-tagged scalar rows, e.g. "# grampoint0,17.8455..."
inline double read_tagged(const std::string& name, const std::string& tag) {
    std::ifstream f(std::string(ZLADDER_TEST_DATA) + "/" + name);
    if (!f) throw std::runtime_error("missing test data: " + name);
    std::string line;
    while (std::getline(f, line)) {
        if (line.rfind("# " + tag + ",", 0) == 0)
            return std::stod(line.substr(tag.size() + 3));
    }
    throw std::runtime_error("tag not found: " + tag);
}

}  // namespace testutil
