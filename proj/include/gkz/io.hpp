#pragma once

// Matrix files, parameter vectors and windows given on the command line.

#include "gkz/semigroup.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

namespace gkz {

class ParseError : public DomainError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : DomainError("ParseError", what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline IntMatrix matrix_from_rows(const std::vector<IntVector>& rows, std::size_t line, std::size_t col) {
    if (rows.empty()) throw ParseError("matrix has no rows", line, col);
    if (rows[0].empty()) throw ParseError("matrix has no columns", line, col);
    return IntMatrix::from_rows(rows);
}

// nlohmann reports failures by byte offset only; locate the n-th
// number token by scanning, which is enough to point at bad entries.
inline std::size_t offset_of_number(const std::string& text, std::size_t index) {
    static const std::regex number(R"(-?\d+(\.\d+)?([eE][+-]?\d+)?)");
    std::size_t k = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), number); it != std::sregex_iterator(); ++it, ++k)
        if (k == index) return static_cast<std::size_t>(it->position());
    return 0;
}

inline IntMatrix parse_json_matrix(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [l, c] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed JSON", l, c);
    }
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw ParseError("expected an object with a \"rows\" array", 1, 1);
    std::vector<IntVector> rows;
    std::size_t seen = 0;
    for (const auto& r : j["rows"]) {
        if (!r.is_array()) throw ParseError("each row must be an array", 1, 1);
        IntVector row;
        for (const auto& x : r) {
            if (!x.is_number_integer()) {
                auto [l, c] = line_column(text, offset_of_number(text, seen));
                throw ParseError("matrix entry is not an integer", l, c);
            }
            row.emplace_back(x.is_number_unsigned() ? Integer(x.get<std::uint64_t>()) : Integer(x.get<std::int64_t>()));
            ++seen;
        }
        if (!rows.empty() && row.size() != rows[0].size()) throw ParseError("rows have different lengths", 1, 1);
        rows.push_back(std::move(row));
    }
    return matrix_from_rows(rows, 1, 1);
}

inline IntMatrix parse_text_matrix(const std::string& text) {
    static const std::regex integer(R"([+-]?\d+)");
    std::vector<IntVector> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0, first_line = 1;
    while (std::getline(in, line)) {
        ++lineno;
        IntVector row;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos >= line.size() || line[pos] == '#') break;
            std::size_t end = pos;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
            std::string tok = line.substr(pos, end - pos);
            if (!std::regex_match(tok, integer)) throw ParseError("matrix entry '" + tok + "' is not an integer", lineno, pos + 1);
            row.emplace_back(tok[0] == '+' ? tok.substr(1) : tok);
            pos = end;
        }
        if (row.empty()) continue;
        if (rows.empty()) first_line = lineno;
        if (!rows.empty() && row.size() != rows[0].size()) throw ParseError("row length differs from the first row", lineno, 1);
        rows.push_back(std::move(row));
    }
    return matrix_from_rows(rows, first_line, 1);
}

}  // namespace detail

/// JSON {"rows": [[...], ...]} with integer entries, or whitespace separated
/// integers with one row per line ('#' starts a comment).
inline IntMatrix parse_matrix_text(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return detail::parse_json_matrix(text);
    return detail::parse_text_matrix(text);
}

inline IntMatrix parse_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open matrix file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str());
}

/// Comma separated integers or rationals p/q.
inline RatVector parse_parameter(const std::string& s) {
    static const std::regex entry(R"(\s*([+-]?\d+)(?:/(\d+))?\s*)");
    RatVector out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::smatch m;
        if (!std::regex_match(tok, m, entry)) throw std::invalid_argument("bad vector entry '" + tok + "'");
        Integer num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
        Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + tok + "'");
        out.emplace_back(num, den);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/// lo1:hi1,lo2:hi2,...
inline Window parse_box(const std::string& s) {
    static const std::regex range(R"(\s*([+-]?\d+):([+-]?\d+)\s*)");
    std::vector<std::int64_t> lo, hi;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::smatch m;
        if (!std::regex_match(tok, m, range)) throw std::invalid_argument("bad box range '" + tok + "'");
        lo.push_back(std::stoll(m[1].str()));
        hi.push_back(std::stoll(m[2].str()));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Window(lo, hi);
}

/// 64-bit FNV-1a of the canonical text "rows x cols:e11,e12,...;".
inline std::string matrix_digest(const IntMatrix& a) {
    std::string canon = std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ":";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) canon += a(i, j).str() + (j + 1 < a.cols() ? "," : "");
        canon += ";";
    }
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace gkz
