#include "dirdes/core.hpp"

#include <algorithm>
#include <cassert>

namespace dirdes::core {

std::string Label::str() const {
    switch (kind) {
        case Kind::Residue: return std::to_string(a);
        case Kind::Pair: return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case Kind::Infinity: return "INF" + std::to_string(a);
    }
    return "?";
}

void PointSpace::add(const Label& l) {
    if (index_.count(l)) throw std::invalid_argument("duplicate label " + l.str());
    index_[l] = static_cast<int>(labels_.size());
    labels_.push_back(l);
}

std::optional<int> PointSpace::find(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int PointSpace::index_of(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw std::out_of_range("label not in point space: " + l.str());
    return it->second;
}

const char* kind_name(DesignKind k) {
    switch (k) {
        case DesignKind::DD: return "DD";
        case DesignKind::DGDD: return "DGDD";
        case DesignKind::BIBD: return "BIBD";
        case DesignKind::GDD: return "GDD";
        case DesignKind::PBD: return "PBD";
        case DesignKind::TD: return "TD";
    }
    return "?";
}

std::optional<DesignKind> kind_from_name(const std::string& s) {
    for (DesignKind k : {DesignKind::DD, DesignKind::DGDD, DesignKind::BIBD, DesignKind::GDD,
                         DesignKind::PBD, DesignKind::TD})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

GroupTypeSignature GroupTypeSignature::of(const LabeledDesign& d) {
    GroupTypeSignature sig;
    if (d.partition)
        for (const auto& g : *d.partition) sig.counts[static_cast<int>(g.size())]++;
    return sig;
}

std::optional<GroupTypeSignature> GroupTypeSignature::parse(const std::string& s) {
    GroupTypeSignature sig;
    size_t i = 0;
    auto num = [&]() -> std::optional<int> {
        size_t start = i;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) i++;
        if (i == start) return std::nullopt;
        return std::stoi(s.substr(start, i - start));
    };
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') i++;
        if (i >= s.size()) break;
        auto size = num();
        if (!size) return std::nullopt;
        int mult = 1;
        if (i < s.size() && s[i] == '^') {
            i++;
            auto m = num();
            if (!m) return std::nullopt;
            mult = *m;
        }
        sig.counts[*size] += mult;
    }
    if (sig.counts.empty()) return std::nullopt;
    return sig;
}

std::string GroupTypeSignature::str() const {
    std::string out;
    for (const auto& [size, mult] : counts) {
        if (!out.empty()) out += ' ';
        out += std::to_string(size) + "^" + std::to_string(mult);
    }
    return out;
}

long long GroupTypeSignature::point_total() const {
    long long t = 0;
    for (const auto& [size, mult] : counts) t += static_cast<long long>(size) * mult;
    return t;
}

std::vector<std::pair<int, int>> ordered_pairs_of(const OrderedBlock& b) {
    std::vector<std::pair<int, int>> ps;
    ps.reserve(b.size() * (b.size() - 1) / 2);
    for (size_t i = 0; i < b.size(); i++)
        for (size_t j = i + 1; j < b.size(); j++) ps.emplace_back(b[i], b[j]);
    return ps;
}

long long PairTable::total() const {
    long long t = 0;
    for (int32_t x : c_) t += x;
    return t;
}

PairTable pair_table(const LabeledDesign& d) {
    PairTable t(d.v());
    for (const auto& b : d.blocks)
        for (auto [x, y] : ordered_pairs_of(b)) {
            if (d.ordered)
                t.at(x, y)++;
            else
                t.at(std::min(x, y), std::max(x, y))++;
        }
    return t;
}

LabeledDesign underlying(const LabeledDesign& d) {
    LabeledDesign u = d;
    if (!d.ordered) return u;
    u.ordered = false;
    u.lambda = d.lambda * 2;
    u.kind = d.kind == DesignKind::DD ? DesignKind::BIBD
             : d.kind == DesignKind::DGDD ? DesignKind::GDD
                                          : d.kind;
    return u;
}

bool valid_block(const LabeledDesign& d, const OrderedBlock& b) {
    if (b.size() < 2) return false;
    std::vector<int> s(b);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    return s.front() >= 0 && s.back() < d.v();
}

}  // namespace dirdes::core
