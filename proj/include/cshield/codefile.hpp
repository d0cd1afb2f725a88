#pragma once

// Line-oriented text format for codes. '#' starts a comment, blank lines
// are ignored, qubit 0 is the leftmost character of every bitstring.
//
//   code <name>
//   n <int>
//   kind css|stab
//   gen <+|-> X:<bits> Z:<bits>   (stab generators, one per line)
//   xgen <bits> / zgen <bits>     (css generators)
//   y <bits> / u <bits>           (css sign characters, default all-zero)
//
// parse and serialize round-trip losslessly; serialize emits the
// canonical form shown above.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cshield/css.hpp"
#include "cshield/errors.hpp"
#include "cshield/f2la.hpp"
#include "cshield/stabilizer.hpp"

namespace cshield {

struct CodeFile {
    enum class Kind { css, stab };

    std::string name;
    std::size_t n = 0;
    Kind kind = Kind::stab;

    std::vector<SignedPauli> gens;  // stab
    BinaryMatrix xgens;             // css
    BinaryMatrix zgens;             // css
    BinaryVector y;                 // css
    BinaryVector u;                 // css

    bool operator==(const CodeFile& other) const {
        return name == other.name && n == other.n && kind == other.kind && gens == other.gens &&
               xgens == other.xgens && zgens == other.zgens && y == other.y && u == other.u;
    }
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            if (!current.empty()) tokens.push_back(std::exchange(current, {}));
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

inline BinaryVector parse_bits(const std::string& token, std::size_t expected, std::size_t line_no) {
    if (token.size() != expected)
        throw SyntaxError(line_no, "bitstring has length " + std::to_string(token.size()) + ", expected " +
                                        std::to_string(expected));
    for (char ch : token)
        if (ch != '0' && ch != '1') throw SyntaxError(line_no, "bitstring contains '" + std::string(1, ch) + "'");
    return BinaryVector::from_string(token);
}

}  // namespace detail

inline CodeFile parse_code_file(std::string_view text) {
    CodeFile file;
    bool saw_code = false, saw_n = false, saw_kind = false, saw_y = false, saw_u = false;
    std::size_t line_no = 0;
    std::istringstream stream{std::string(text)};
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto tokens = detail::tokenize(raw);
        if (tokens.empty()) continue;
        const std::string& key = tokens.front();

        auto expect_args = [&](std::size_t count) {
            if (tokens.size() != count + 1)
                throw SyntaxError(line_no, "'" + key + "' expects " + std::to_string(count) + " argument(s)");
        };
        auto need_header = [&] {
            if (!saw_code || !saw_n || !saw_kind)
                throw SyntaxError(line_no, "'" + key + "' before the code/n/kind header");
        };

        if (key == "code") {
            expect_args(1);
            file.name = tokens[1];
            saw_code = true;
        } else if (key == "n") {
            expect_args(1);
            try {
                file.n = std::stoul(tokens[1]);
            } catch (...) {
                throw SyntaxError(line_no, "bad qubit count '" + tokens[1] + "'");
            }
            if (file.n == 0) throw SyntaxError(line_no, "n must be positive");
            saw_n = true;
        } else if (key == "kind") {
            expect_args(1);
            if (tokens[1] == "css")
                file.kind = CodeFile::Kind::css;
            else if (tokens[1] == "stab")
                file.kind = CodeFile::Kind::stab;
            else
                throw SyntaxError(line_no, "kind must be css or stab");
            saw_kind = true;
            if (file.kind == CodeFile::Kind::css) {
                file.xgens = BinaryMatrix(file.n);
                file.zgens = BinaryMatrix(file.n);
                file.y = BinaryVector(file.n);
                file.u = BinaryVector(file.n);
            }
        } else if (key == "gen") {
            need_header();
            if (file.kind != CodeFile::Kind::stab) throw SyntaxError(line_no, "'gen' only valid for kind stab");
            expect_args(3);
            int sign = 0;
            if (tokens[1] == "+")
                sign = +1;
            else if (tokens[1] == "-")
                sign = -1;
            else
                throw SyntaxError(line_no, "sign must be + or -");
            if (tokens[2].rfind("X:", 0) != 0 || tokens[3].rfind("Z:", 0) != 0)
                throw SyntaxError(line_no, "expected 'gen <sign> X:<bits> Z:<bits>'");
            file.gens.emplace_back(detail::parse_bits(tokens[2].substr(2), file.n, line_no),
                                   detail::parse_bits(tokens[3].substr(2), file.n, line_no), sign);
        } else if (key == "xgen" || key == "zgen" || key == "y" || key == "u") {
            need_header();
            if (file.kind != CodeFile::Kind::css)
                throw SyntaxError(line_no, "'" + key + "' only valid for kind css");
            expect_args(1);
            BinaryVector bits = detail::parse_bits(tokens[1], file.n, line_no);
            if (key == "xgen")
                file.xgens.append_row(std::move(bits));
            else if (key == "zgen")
                file.zgens.append_row(std::move(bits));
            else if (key == "y") {
                if (saw_y) throw SyntaxError(line_no, "duplicate 'y'");
                file.y = std::move(bits);
                saw_y = true;
            } else {
                if (saw_u) throw SyntaxError(line_no, "duplicate 'u'");
                file.u = std::move(bits);
                saw_u = true;
            }
        } else {
            throw SyntaxError(line_no, "unknown directive '" + key + "'");
        }
    }
    if (!saw_code) throw SyntaxError(line_no, "missing 'code <name>' line");
    if (!saw_n) throw SyntaxError(line_no, "missing 'n <int>' line");
    if (!saw_kind) throw SyntaxError(line_no, "missing 'kind css|stab' line");
    return file;
}

inline std::string serialize(const CodeFile& file) {
    std::ostringstream out;
    out << "code " << file.name << "\n";
    out << "n " << file.n << "\n";
    out << "kind " << (file.kind == CodeFile::Kind::css ? "css" : "stab") << "\n";
    if (file.kind == CodeFile::Kind::stab) {
        for (const auto& g : file.gens)
            out << "gen " << (g.sign > 0 ? "+" : "-") << " X:" << g.x.to_string() << " Z:" << g.z.to_string()
                << "\n";
    } else {
        for (std::size_t i = 0; i < file.xgens.row_count(); ++i) out << "xgen " << file.xgens.row(i).to_string() << "\n";
        for (std::size_t i = 0; i < file.zgens.row_count(); ++i) out << "zgen " << file.zgens.row(i).to_string() << "\n";
        out << "y " << file.y.to_string() << "\n";
        out << "u " << file.u.to_string() << "\n";
    }
    return out.str();
}

inline CssCode to_css_code(const CodeFile& file) {
    if (file.kind != CodeFile::Kind::css) throw ValidationError("code file is not kind css");
    return make_css_code(file.n, file.xgens, file.zgens, file.y, file.u);
}

// Validated stabilizer group for either kind.
inline StabilizerGroup to_group(const CodeFile& file) {
    if (file.kind == CodeFile::Kind::css) return to_stabilizer_group(to_css_code(file));
    StabilizerGroup s(file.n, file.gens);
    const CheckReport report = validate(s);
    if (!report.verdict) {
        const CheckEntry* fail = report.first_failure();
        throw ValidationError("invalid stabilizer group: " + (fail ? fail->witness : std::string("unknown")));
    }
    return s;
}

}  // namespace cshield
