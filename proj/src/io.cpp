#include "pbtd/io.hpp"

#include <cctype>
#include <utility>

#include <json.hpp>

namespace pbtd {

namespace {

struct RawCell {
    int a;
    int b;
    int line;  // 1-based physical line
    int index; // 1-based cell position within the line
};

bool scan_int(std::string_view line, std::size_t& pos, int& value) {
    if (pos >= line.size() || !std::isdigit(static_cast<unsigned char>(line[pos])))
        return false;
    long v = 0;
    while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
        v = v * 10 + (line[pos] - '0');
        if (v > 1000000)
            return false;
        ++pos;
    }
    value = static_cast<int>(v);
    return true;
}

void skip_spaces(std::string_view line, std::size_t& pos) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
}

std::string cell_at(int line, int index) {
    return "line " + std::to_string(line) + ", cell " + std::to_string(index);
}

} // namespace

DesignArray parse_text(std::string_view input) {
    std::vector<std::vector<RawCell>> rows;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= input.size()) {
        std::size_t end = input.find('\n', start);
        if (end == std::string_view::npos) end = input.size();
        std::string_view line = input.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        start = end + 1;
        ++line_no;

        std::size_t pos = 0;
        skip_spaces(line, pos);
        if (pos >= line.size() || line[pos] == '#') continue;

        std::vector<RawCell> cells;
        while (pos < line.size()) {
            if (line[pos] == '|') {
                ++pos;
                skip_spaces(line, pos);
                continue;
            }
            RawCell cell{0, 0, line_no, static_cast<int>(cells.size()) + 1};
            if (!scan_int(line, pos, cell.a))
                throw Error(Errc::token, "expected an integer at " + cell_at(line_no, cell.index));
            skip_spaces(line, pos);
            if (pos >= line.size() || line[pos] != ',')
                throw Error(Errc::token, "missing comma at " + cell_at(line_no, cell.index));
            ++pos;
            skip_spaces(line, pos);
            if (!scan_int(line, pos, cell.b))
                throw Error(Errc::token,
                            "expected an integer after comma at " + cell_at(line_no, cell.index));
            cells.push_back(cell);
            skip_spaces(line, pos);
        }
        if (!cells.empty()) rows.push_back(std::move(cells));
    }

    if (rows.empty()) throw Error(Errc::shape, "no rows in input");
    const int n = static_cast<int>(rows.size());
    const std::size_t expected_cells = static_cast<std::size_t>(2 * n - 1);
    for (const auto& row : rows) {
        if (row.size() != expected_cells)
            throw Error(Errc::shape, "line " + std::to_string(row.front().line) + " has " +
                                         std::to_string(row.size()) + " cells, expected " +
                                         std::to_string(expected_cells) + " for " +
                                         std::to_string(n) + " rows");
    }

    const Side side(n);
    std::vector<UnorderedPair> cells;
    cells.reserve(static_cast<std::size_t>(side.pair_count()));
    for (const auto& row : rows) {
        for (const RawCell& cell : row) {
            if (cell.a == cell.b)
                throw Error(Errc::self_pair, "element " + std::to_string(cell.a) +
                                                 " paired with itself at " +
                                                 cell_at(cell.line, cell.index));
            if (cell.a >= side.elements() || cell.b >= side.elements())
                throw Error(Errc::range,
                            "label " + std::to_string(std::max(cell.a, cell.b)) +
                                " exceeds " + std::to_string(side.elements() - 1) + " at " +
                                cell_at(cell.line, cell.index));
            cells.push_back(make_pair(cell.a, cell.b));
        }
    }
    return DesignArray(side, std::move(cells));
}

std::string emit_text(const DesignArray& design) {
    const Side side = design.side();
    std::string out;
    for (int r = 0; r < side.rows(); ++r) {
        for (int c = 0; c < side.columns(); ++c) {
            if (c > 0) out += c == side.middle_column() + 1 ? " | " : " ";
            const UnorderedPair p = design.at(r, c);
            out += std::to_string(p.low);
            out += ',';
            out += std::to_string(p.high);
        }
        out += '\n';
    }
    return out;
}

DesignArray parse_structured(std::string_view input) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::token, std::string("invalid document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows"))
        throw Error(Errc::schema, "document must be an object with fields n and rows");
    if (!doc["n"].is_number_integer())
        throw Error(Errc::schema, "field n must be an integer");
    const int n = doc["n"].get<int>();
    if (n < 1) throw Error(Errc::schema, "field n must be at least 1");
    const Side side(n);
    const nlohmann::json& rows = doc["rows"];
    if (!rows.is_array())
        throw Error(Errc::schema, "field rows must be an array");
    if (static_cast<int>(rows.size()) != side.rows())
        throw Error(Errc::shape, "expected " + std::to_string(side.rows()) + " rows, got " +
                                     std::to_string(rows.size()));

    std::vector<UnorderedPair> cells;
    cells.reserve(static_cast<std::size_t>(side.pair_count()));
    for (int r = 0; r < side.rows(); ++r) {
        const nlohmann::json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array())
            throw Error(Errc::schema, "row " + std::to_string(r + 1) + " must be an array");
        if (static_cast<int>(row.size()) != side.columns())
            throw Error(Errc::shape, "row " + std::to_string(r + 1) + " has " +
                                         std::to_string(row.size()) + " cells, expected " +
                                         std::to_string(side.columns()));
        for (int c = 0; c < side.columns(); ++c) {
            const nlohmann::json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() ||
                !cell[1].is_number_integer())
                throw Error(Errc::schema, "cell (" + std::to_string(r + 1) + "," +
                                              std::to_string(c + 1) +
                                              ") must be a pair of integers");
            const int a = cell[0].get<int>();
            const int b = cell[1].get<int>();
            if (a == b)
                throw Error(Errc::self_pair, "element " + std::to_string(a) +
                                                 " paired with itself at cell (" +
                                                 std::to_string(r + 1) + "," +
                                                 std::to_string(c + 1) + ")");
            if (a < 0 || b < 0 || a >= side.elements() || b >= side.elements())
                throw Error(Errc::range, "label out of range at cell (" + std::to_string(r + 1) +
                                             "," + std::to_string(c + 1) + ")");
            cells.push_back(make_pair(a, b));
        }
    }
    return DesignArray(side, std::move(cells));
}

std::string emit_structured(const DesignArray& design) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < design.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < design.columns(); ++c) {
            const UnorderedPair p = design.at(r, c);
            row.push_back(nlohmann::json::array({p.low, p.high}));
        }
        rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["n"] = design.side().n;
    doc["rows"] = std::move(rows);
    return doc.dump();
}

} // namespace pbtd
