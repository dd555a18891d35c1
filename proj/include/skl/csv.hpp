#pragma once

// Minimal CSV table: header + rows of doubles, printed with 12 significant digits.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skl {

/// "%.12g" rendering used by every CSV and console report.
[[nodiscard]] inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Value as it reads back from its CSV rendering.
[[nodiscard]] inline double round_trip(double v) { return std::stod(format_number(v)); }

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c) out += ',';
            out += header[c];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += format_number(row[c]);
            }
            out += '\n';
        }
        return out;
    }

    /// Column index by name; throws std::out_of_range if missing.
    [[nodiscard]] std::size_t column(const std::string& name) const {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name) return c;
        throw std::out_of_range("csv: no column " + name);
    }

    [[nodiscard]] std::vector<double> column_values(const std::string& name) const {
        const auto c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[c]);
        return out;
    }

    [[nodiscard]] static CsvTable parse(const std::string& text) {
        CsvTable t;
        std::istringstream in(text);
        std::string line;
        auto split = [](const std::string& s) {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream ls(s);
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (!s.empty() && s.back() == ',') cells.emplace_back();
            return cells;
        };
        if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
        t.header = split(line);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<double> row;
            for (const auto& cell : split(line)) row.push_back(std::stod(cell));
            if (row.size() != t.header.size()) throw std::runtime_error("csv: ragged row");
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    /// Same table after a write/parse cycle.
    [[nodiscard]] CsvTable round_tripped() const { return parse(to_string()); }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path + " for writing");
        out << to_string();
        if (!out) throw std::runtime_error("failed writing " + path);
    }
};

} // namespace skl
