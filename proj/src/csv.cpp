#include <algorithm>
#include <fstream>
#include <istream>
#include <string_view>

#include "f2x/table.hpp"

namespace f2x {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

// One physical-or-logical line into cells. `offset` is the byte position of
// the line start, for error messages.
std::vector<std::string> split_record(std::string_view line, std::size_t offset) {
    std::vector<std::string> cells;
    std::size_t i = 0;
    while (true) {
        // find the quoted or bare cell starting at i
        std::size_t cell_start = i;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::string cell;
        if (i < line.size() && line[i] == '"') {
            ++i;
            while (true) {
                if (i >= line.size())
                    throw parse_error("csv: unterminated quote", offset + cell_start);
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cell += '"';
                        i += 2;
                    } else {
                        ++i;
                        break;
                    }
                } else {
                    cell += line[i++];
                }
            }
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i < line.size() && line[i] != ',')
                throw parse_error("csv: text after closing quote", offset + i);
        } else {
            std::size_t end = line.find(',', i);
            if (end == std::string_view::npos) end = line.size();
            cell = trim(line.substr(cell_start, end - cell_start));
            i = end;
        }
        cells.push_back(std::move(cell));
        if (i >= line.size()) break;
        ++i; // the comma
        if (i == line.size()) { // trailing comma: one final empty cell
            cells.emplace_back();
            break;
        }
    }
    return cells;
}

} // namespace

DataTable read_csv(std::istream& in) {
    DataTable t;
    std::string line;
    std::size_t offset = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        std::size_t line_offset = offset;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        // a quoted cell may contain newlines; pull in more lines until quotes balance
        while (std::count(line.begin(), line.end(), '"') % 2 != 0) {
            std::string more;
            if (!std::getline(in, more))
                throw parse_error("csv: unterminated quote at end of input", line_offset);
            offset += more.size() + 1;
            if (!more.empty() && more.back() == '\r') more.pop_back();
            line += '\n';
            line += more;
        }

        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_record(line, line_offset);

        if (!have_header) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (cells[i].empty())
                    throw parse_error("csv: empty attribute name in header", line_offset);
                for (std::size_t j = 0; j < i; ++j)
                    if (cells[j] == cells[i])
                        throw parse_error("csv: duplicate attribute '" + cells[i] + "'",
                                          line_offset);
            }
            t.attributes = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.attributes.size())
            throw parse_error("csv: row has " + std::to_string(cells.size()) +
                                  " cells, header has " +
                                  std::to_string(t.attributes.size()),
                              line_offset);
        t.rows.push_back(std::move(cells));
    }
    if (!have_header) throw data_error("csv: no header row");
    return t;
}

DataTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open " + path);
    return read_csv(in);
}

std::string write_csv(const DataTable& t) {
    auto needs_quotes = [](const std::string& s) {
        if (s.empty()) return false;
        if (s.front() == ' ' || s.front() == '\t' || s.back() == ' ' || s.back() == '\t')
            return true;
        return s.find_first_of(",\"\n\r") != std::string::npos;
    };
    auto emit = [&](std::string& out, const std::string& cell) {
        if (!needs_quotes(cell)) {
            out += cell;
            return;
        }
        out += '"';
        for (char c : cell) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
    };

    std::string out;
    for (std::size_t i = 0; i < t.attributes.size(); ++i) {
        if (i > 0) out += ',';
        emit(out, t.attributes[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            emit(out, row[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace f2x
