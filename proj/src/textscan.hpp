#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dirdes/core.hpp"
#include "dirdes/io.hpp"

namespace dirdes::detail {

// Splits into lines, stripping \r and # comments. Line numbers are 1-based.
inline std::vector<std::pair<int, std::string>> logical_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    int n = 1;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string line = text.substr(start, end == std::string::npos ? end : end - start);
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        out.emplace_back(n, line);
        if (end == std::string::npos) break;
        start = end + 1;
        n++;
    }
    return out;
}

struct LineScanner {
    std::string_view s;
    size_t pos = 0;
    int lineNo = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw core::ParseError(msg, lineNo, static_cast<int>(pos) + 1);
    }
    void ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) pos++;
    }
    bool eol() {
        ws();
        return pos >= s.size();
    }
    char peek() {
        ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool lit(char c) {
        ws();
        if (pos < s.size() && s[pos] == c) {
            pos++;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!lit(c)) fail(std::string("expected '") + c + "'");
    }
    // Matches a keyword up to a non-word character.
    bool word(const char* w) {
        ws();
        size_t p = pos, i = 0;
        while (w[i] && p < s.size() && s[p] == w[i]) p++, i++;
        if (w[i]) return false;
        if (p < s.size() && (isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) return false;
        pos = p;
        return true;
    }
    std::string ident() {
        ws();
        size_t start = pos;
        while (pos < s.size() && (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                                  s[pos] == '-'))
            pos++;
        if (pos == start) fail("expected identifier");
        return std::string(s.substr(start, pos - start));
    }
    int integer() {
        ws();
        bool neg = false;
        size_t start = pos;
        if (pos < s.size() && s[pos] == '-') {
            neg = true;
            pos++;
        }
        size_t d = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        if (pos == d) {
            pos = start;
            fail("expected integer");
        }
        return std::stoi(std::string(s.substr(start, pos - start)));
    }
    bool peek_int() {
        ws();
        return pos < s.size() &&
               (isdigit(static_cast<unsigned char>(s[pos])) ||
                (s[pos] == '-' && pos + 1 < s.size() &&
                 isdigit(static_cast<unsigned char>(s[pos + 1]))));
    }

    core::Label label() {
        ws();
        if (pos < s.size() && s[pos] == '(') {
            pos++;
            int a = integer();
            expect(',');
            int b = integer();
            expect(')');
            return core::Label::pair(a, b);
        }
        if (s.compare(pos, 3, "INF") == 0) {
            pos += 3;
            int j = peek_int_nows() ? integer_nows() : 0;
            return core::Label::infinity(j);
        }
        return core::Label::residue(integer());
    }
    bool peek_int_nows() {
        return pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]));
    }
    int integer_nows() {
        size_t d = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        return std::stoi(std::string(s.substr(d, pos - d)));
    }

    std::vector<core::Label> tuple() {
        expect('(');
        std::vector<core::Label> out;
        out.push_back(label());
        while (lit(',')) out.push_back(label());
        expect(')');
        return out;
    }

    // label or inclusive label range `a..b` / `INF0..INF9`, expanded
    void label_range_into(std::vector<core::Label>& out) {
        core::Label first = label();
        ws();
        if (pos + 1 < s.size() && s[pos] == '.' && s[pos + 1] == '.') {
            pos += 2;
            core::Label last = label();
            if (first.kind != last.kind || first.kind == core::Label::Kind::Pair)
                fail("bad label range");
            if (last.a < first.a) fail("descending label range");
            for (int v = first.a; v <= last.a; v++)
                out.push_back(first.kind == core::Label::Kind::Residue
                                  ? core::Label::residue(v)
                                  : core::Label::infinity(v));
        } else {
            out.push_back(first);
        }
    }
};

}  // namespace dirdes::detail
