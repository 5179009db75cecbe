#include "dirdes/io.hpp"

#include <algorithm>
#include <set>

#include "textscan.hpp"

namespace dirdes::io {

using core::Label;
using core::LabeledDesign;
using core::ParseError;
using core::PointSpace;

namespace {

// Describes the finite part of a point space compactly; INF labels are carried
// by the infty= attribute.
std::string space_attr(const LabeledDesign& d) {
    std::vector<Label> fin;
    int inf = 0;
    for (const auto& l : d.space.labels()) {
        if (l.kind == Label::Kind::Infinity) {
            if (l.a != inf++) throw std::logic_error("non-canonical infinity labels");
        } else {
            if (inf) throw std::logic_error("infinity labels must come last");
            fin.push_back(l);
        }
    }
    if (!fin.empty() && fin[0].kind == Label::Kind::Pair) {
        int m = 0, n = 0;
        for (const auto& l : fin) {
            if (l.kind != Label::Kind::Pair) throw std::logic_error("mixed label kinds");
            m = std::max(m, l.a + 1);
            n = std::max(n, l.b + 1);
        }
        size_t i = 0;
        bool grid = fin.size() == static_cast<size_t>(m) * n;
        for (int a = 0; grid && a < m; a++)
            for (int b = 0; grid && b < n; b++, i++)
                grid = fin[i] == Label::pair(a, b);
        if (!grid) throw std::logic_error("pair labels do not form a grid");
        return "grid:" + std::to_string(m) + "x" + std::to_string(n);
    }
    bool isMod = true;
    for (size_t i = 0; i < fin.size(); i++) isMod = isMod && fin[i] == Label::residue(static_cast<int>(i));
    if (isMod) return "mod:" + std::to_string(fin.size());
    std::string out = "labels:";
    for (size_t i = 0; i < fin.size();) {
        size_t j = i;
        while (j + 1 < fin.size() && fin[j + 1].a == fin[j].a + 1) j++;
        if (!out.ends_with(':')) out += ',';
        out += std::to_string(fin[i].a);
        if (j > i) out += ".." + std::to_string(fin[j].a);
        i = j + 1;
    }
    return out;
}

PointSpace space_from_attr(const std::string& attr, int infty, int lineNo) {
    PointSpace sp;
    auto bad = [&] { throw ParseError("bad space attribute: " + attr, lineNo, 1); };
    auto colon = attr.find(':');
    if (colon == std::string::npos) bad();
    std::string kind = attr.substr(0, colon), rest = attr.substr(colon + 1);
    if (kind == "mod") {
        int g = std::stoi(rest);
        for (int i = 0; i < g; i++) sp.add(Label::residue(i));
    } else if (kind == "grid") {
        auto x = rest.find('x');
        if (x == std::string::npos) bad();
        int m = std::stoi(rest.substr(0, x)), n = std::stoi(rest.substr(x + 1));
        for (int a = 0; a < m; a++)
            for (int b = 0; b < n; b++) sp.add(Label::pair(a, b));
    } else if (kind == "labels") {
        detail::LineScanner sc{rest, 0, lineNo};
        std::vector<Label> ls;
        sc.label_range_into(ls);
        while (sc.lit(',')) sc.label_range_into(ls);
        if (!sc.eol()) bad();
        for (const auto& l : ls) sp.add(l);
    } else {
        bad();
    }
    for (int j = 0; j < infty; j++) sp.add(Label::infinity(j));
    return sp;
}

}  // namespace

std::string write_design(const LabeledDesign& d) {
    int infty = 0;
    for (const auto& l : d.space.labels())
        if (l.kind == Label::Kind::Infinity) infty++;
    std::string out = "design v=" + std::to_string(d.v()) + " lambda=" + std::to_string(d.lambda) +
                      " kind=" + core::kind_name(d.kind) + " ordered=" +
                      (d.ordered ? "1" : "0") + " space=" + space_attr(d);
    if (infty) out += " infty=" + std::to_string(infty);
    out += "\n";
    if (d.partition)
        for (const auto& g : *d.partition) {
            out += "group:";
            for (int p : g) out += " " + d.space.label(p).str();
            out += "\n";
        }
    if (d.classes)
        for (const auto& c : *d.classes) {
            out += "class:";
            for (int b : c) out += " " + std::to_string(b);
            out += "\n";
        }
    for (const auto& b : d.blocks) {
        std::string line = "(";
        for (size_t i = 0; i < b.size(); i++) {
            if (i) line += ", ";
            line += d.space.label(b[i]).str();
        }
        out += line + ")\n";
    }
    return out;
}

LabeledDesign read_design(const std::string& text) {
    LabeledDesign d;
    bool sawHeader = false;
    int v = -1, infty = 0;
    std::string spaceAttr;
    int headerLine = 1;
    std::vector<std::pair<int, std::vector<Label>>> groupLabels;
    std::vector<std::vector<int>> classes;
    std::vector<std::pair<int, std::vector<Label>>> blockLabels;

    for (auto& [no, line] : detail::logical_lines(text)) {
        detail::LineScanner sc{line, 0, no};
        if (sc.eol()) continue;
        if (!sawHeader) {
            if (!sc.word("design")) sc.fail("expected design header");
            sawHeader = true;
            headerLine = no;
            while (!sc.eol()) {
                std::string key = sc.ident();
                sc.expect('=');
                if (key == "v")
                    v = sc.integer();
                else if (key == "lambda")
                    d.lambda = sc.integer();
                else if (key == "ordered")
                    d.ordered = sc.integer() != 0;
                else if (key == "infty")
                    infty = sc.integer();
                else if (key == "kind") {
                    auto k = core::kind_from_name(sc.ident());
                    if (!k) sc.fail("unknown design kind");
                    d.kind = *k;
                } else if (key == "space") {
                    sc.ws();
                    size_t start = sc.pos;
                    while (sc.pos < sc.s.size() && sc.s[sc.pos] != ' ' && sc.s[sc.pos] != '\t')
                        sc.pos++;
                    spaceAttr = std::string(sc.s.substr(start, sc.pos - start));
                } else {
                    sc.fail("unknown design attribute " + key);
                }
            }
            if (v < 0) sc.fail("design header missing v=");
            continue;
        }
        if (sc.word("group")) {
            sc.expect(':');
            std::vector<Label> ls;
            while (!sc.eol()) {
                sc.label_range_into(ls);
                sc.lit(',');
            }
            groupLabels.emplace_back(no, std::move(ls));
        } else if (sc.word("class")) {
            sc.expect(':');
            std::vector<int> c;
            while (!sc.eol()) c.push_back(sc.integer());
            classes.push_back(std::move(c));
        } else if (sc.peek() == '(') {
            blockLabels.emplace_back(no, sc.tuple());
            if (!sc.eol()) sc.fail("trailing text after block");
        } else {
            sc.fail("unrecognized line");
        }
    }
    if (!sawHeader) throw ParseError("empty design file", 1, 1);

    if (!spaceAttr.empty()) {
        d.space = space_from_attr(spaceAttr, infty, headerLine);
    } else {
        std::set<Label> seen;
        for (auto& [no, ls] : groupLabels) seen.insert(ls.begin(), ls.end());
        for (auto& [no, ls] : blockLabels) seen.insert(ls.begin(), ls.end());
        for (const auto& l : seen)
            if (l.kind == Label::Kind::Pair)
                throw ParseError("pair labels require a space= attribute", headerLine, 1);
        for (const auto& l : seen)
            if (l.kind == Label::Kind::Residue) d.space.add(l);
        for (const auto& l : seen)
            if (l.kind == Label::Kind::Infinity) d.space.add(l);
    }
    if (d.v() != v)
        throw ParseError("v=" + std::to_string(v) + " but point space has " +
                             std::to_string(d.v()) + " labels",
                         headerLine, 1);

    auto mapLabels = [&](const std::pair<int, std::vector<Label>>& in) {
        std::vector<int> out;
        out.reserve(in.second.size());
        for (const auto& l : in.second) {
            auto idx = d.space.find(l);
            if (!idx) throw ParseError("label " + l.str() + " not in point space", in.first, 1);
            out.push_back(*idx);
        }
        return out;
    };
    if (!groupLabels.empty()) {
        d.partition.emplace();
        for (const auto& g : groupLabels) d.partition->push_back(mapLabels(g));
    }
    if (!classes.empty()) d.classes = std::move(classes);
    for (const auto& b : blockLabels) {
        auto blk = mapLabels(b);
        if (!core::valid_block(d, blk))
            throw ParseError("invalid block (repeated or out-of-range point)", b.first, 1);
        d.blocks.push_back(std::move(blk));
    }
    return d;
}

}  // namespace dirdes::io
