#pragma once

// CSV emission: UTF-8, header row, one line per row, numbers printed with
// %.17g so round-tripping and byte-level determinism hold.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "zygwave/common.hpp"

namespace zyg {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path, std::ios::trunc);
    require(os.good(), "write_csv: cannot open " + path);
    for (std::size_t c = 0; c < header.size(); ++c)
        os << (c ? "," : "") << header[c];
    os << "\n";
    for (const auto& row : rows) {
        require(row.size() == header.size(), "write_csv: row width mismatch");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << fmt_g17(row[c]);
        os << "\n";
    }
    require(os.good(), "write_csv: write failure on " + path);
}

}  // namespace zyg
