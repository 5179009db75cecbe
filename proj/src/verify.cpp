#include "dirdes/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dirdes::verify {

using core::LabeledDesign;

void Report::check(const std::string& name, bool ok, const std::string& detail) {
    std::string line = name + (ok ? " ok" : " FAIL");
    if (!detail.empty()) line += " " + detail;
    checks.push_back(line);
    pass = pass && ok;
}

void Report::count(const std::string& name, long long n) {
    counts.push_back(name + " " + std::to_string(n));
}

void Report::violation(const std::string& what) {
    violationsTotal++;
    if (violations.size() < kViolationCap) violations.push_back(what);
    pass = false;
}

void Report::merge(const Report& other) {
    pass = pass && other.pass;
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    counts.insert(counts.end(), other.counts.begin(), other.counts.end());
    for (const auto& v : other.violations)
        if (violations.size() < kViolationCap) violations.push_back(v);
    violationsTotal += other.violationsTotal;
}

std::string Report::text() const {
    std::string out = pass ? "RESULT PASS\n" : "RESULT FAIL\n";
    for (const auto& c : counts) out += "COUNT " + c + "\n";
    for (const auto& c : checks) out += "CHECK " + c + "\n";
    for (const auto& v : violations) out += "VIOLATION " + v + "\n";
    if (violationsTotal > static_cast<long long>(violations.size()))
        out += "VIOLATIONS-TOTAL " + std::to_string(violationsTotal) + "\n";
    return out;
}

namespace {

std::string pair_str(const LabeledDesign& d, int x, int y) {
    return "(" + d.space.label(x).str() + ", " + d.space.label(y).str() + ")";
}

bool blocks_well_formed(const LabeledDesign& d, Report& rep, int requiredSize) {
    bool ok = true;
    for (size_t i = 0; i < d.blocks.size(); i++) {
        const auto& b = d.blocks[i];
        if (requiredSize && static_cast<int>(b.size()) != requiredSize) {
            rep.violation("block " + std::to_string(i) + " has size " + std::to_string(b.size()));
            ok = false;
            continue;
        }
        if (!core::valid_block(d, b)) {
            rep.violation("block " + std::to_string(i) + " repeats a point or leaves the point set");
            ok = false;
        }
    }
    rep.check("blocks-well-formed", ok);
    return ok;
}

// groupOf[p] = group index, or -1 when ungrouped; empty when no partition.
std::vector<int> group_map(const LabeledDesign& d, Report& rep) {
    std::vector<int> g(d.v(), -1);
    bool ok = true;
    if (!d.partition) {
        rep.check("groups-partition-points", false, "no group partition present");
        return g;
    }
    for (size_t gi = 0; gi < d.partition->size(); gi++)
        for (int p : (*d.partition)[gi]) {
            if (p < 0 || p >= d.v() || g[p] != -1) {
                ok = false;
                continue;
            }
            g[p] = static_cast<int>(gi);
        }
    for (int p = 0; p < d.v(); p++) ok = ok && g[p] != -1;
    rep.check("groups-partition-points", ok);
    return g;
}

}  // namespace

Report verify_dd(const LabeledDesign& d) {
    Report rep;
    rep.count("points", d.v());
    rep.count("blocks", d.blocks.size());
    rep.check("ordered", d.ordered);
    blocks_well_formed(d, rep, 5);
    long long expected = static_cast<long long>(d.v()) * (d.v() - 1) / 10;
    rep.check("block-count", static_cast<long long>(d.blocks.size()) == expected,
              "expected " + std::to_string(expected));

    auto table = core::pair_table(d);
    bool cover = true;
    for (int x = 0; x < d.v(); x++)
        for (int y = 0; y < d.v(); y++) {
            if (x == y) continue;
            if (table.at(x, y) != d.lambda) {
                cover = false;
                rep.violation("ordered pair " + pair_str(d, x, y) + " covered " +
                              std::to_string(table.at(x, y)) + " times, wanted " +
                              std::to_string(d.lambda));
            }
        }
    rep.check("ordered-pair-coverage", cover);
    return rep;
}

Report verify_dgdd(const LabeledDesign& d) {
    Report rep;
    rep.count("points", d.v());
    rep.count("blocks", d.blocks.size());
    if (d.partition) rep.count("groups", d.partition->size());
    rep.check("ordered", d.ordered);
    blocks_well_formed(d, rep, 5);
    auto g = group_map(d, rep);

    long long within = 0;
    if (d.partition)
        for (const auto& grp : *d.partition)
            within += static_cast<long long>(grp.size()) * (grp.size() - 1);
    long long crossPairs = static_cast<long long>(d.v()) * (d.v() - 1) - within;
    rep.check("block-count",
              static_cast<long long>(d.blocks.size()) * 10 == crossPairs * d.lambda,
              "expected " + std::to_string(crossPairs * d.lambda / 10));

    auto table = core::pair_table(d);
    bool cover = true;
    for (int x = 0; x < d.v(); x++)
        for (int y = 0; y < d.v(); y++) {
            if (x == y) continue;
            int want = (g[x] >= 0 && g[x] == g[y]) ? 0 : d.lambda;
            if (table.at(x, y) != want) {
                cover = false;
                rep.violation("ordered pair " + pair_str(d, x, y) + " covered " +
                              std::to_string(table.at(x, y)) + " times, wanted " +
                              std::to_string(want));
            }
        }
    rep.check("ordered-pair-coverage", cover);
    return rep;
}

Report verify_super_simple(const LabeledDesign& d) {
    Report rep;
    // Blocks sharing >= 3 points share an unordered pair, so candidates come
    // from a pair -> blocks index instead of all block pairs.
    std::map<std::pair<int, int>, std::vector<int>> byPair;
    for (size_t i = 0; i < d.blocks.size(); i++)
        for (auto [x, y] : core::ordered_pairs_of(d.blocks[i]))
            byPair[{std::min(x, y), std::max(x, y)}].push_back(static_cast<int>(i));

    std::set<std::pair<int, int>> candidates;
    for (const auto& [pr, bs] : byPair)
        for (size_t i = 0; i < bs.size(); i++)
            for (size_t j = i + 1; j < bs.size(); j++) candidates.insert({bs[i], bs[j]});

    bool ok = true;
    for (auto [i, j] : candidates) {
        std::vector<int> a = d.blocks[i], b = d.blocks[j];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::vector<int> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        if (both.size() > 2) {
            ok = false;
            std::string pts;
            for (int p : both) pts += (pts.empty() ? "" : ",") + d.space.label(p).str();
            rep.violation("blocks " + std::to_string(i) + " and " + std::to_string(j) +
                          " share {" + pts + "}");
        }
    }
    rep.check("super-simple", ok);
    return rep;
}

Report verify_unordered(const LabeledDesign& d, const std::vector<int>& K) {
    Report rep;
    rep.count("points", d.v());
    rep.count("blocks", d.blocks.size());
    bool sizes = true;
    for (size_t i = 0; i < d.blocks.size(); i++) {
        if (!core::valid_block(d, d.blocks[i])) {
            rep.violation("block " + std::to_string(i) + " repeats a point or leaves the point set");
            sizes = false;
        }
        if (!K.empty() &&
            std::find(K.begin(), K.end(), static_cast<int>(d.blocks[i].size())) == K.end()) {
            rep.violation("block " + std::to_string(i) + " has size " +
                          std::to_string(d.blocks[i].size()));
            sizes = false;
        }
    }
    rep.check("blocks-well-formed", sizes);

    std::vector<int> g(d.v(), -1);
    if (d.partition) g = group_map(d, rep);

    core::PairTable table(d.v());
    for (const auto& b : d.blocks)
        for (auto [x, y] : core::ordered_pairs_of(b)) table.at(std::min(x, y), std::max(x, y))++;
    bool cover = true;
    for (int x = 0; x < d.v(); x++)
        for (int y = x + 1; y < d.v(); y++) {
            int want = (g[x] >= 0 && g[x] == g[y]) ? 0 : d.lambda;
            if (table.at(x, y) != want) {
                cover = false;
                rep.violation("pair " + pair_str(d, x, y) + " covered " +
                              std::to_string(table.at(x, y)) + " times, wanted " +
                              std::to_string(want));
            }
        }
    rep.check("pair-coverage", cover);
    return rep;
}

Report verify_resolution(const LabeledDesign& d) {
    Report rep;
    if (!d.classes) {
        rep.check("has-classes", false);
        return rep;
    }
    rep.count("classes", d.classes->size());
    std::vector<int> used(d.blocks.size(), 0);
    bool ok = true;
    for (size_t ci = 0; ci < d.classes->size(); ci++) {
        std::vector<int> seen(d.v(), 0);
        for (int bi : (*d.classes)[ci]) {
            if (bi < 0 || bi >= static_cast<int>(d.blocks.size())) {
                rep.violation("class " + std::to_string(ci) + " references block " +
                              std::to_string(bi));
                ok = false;
                continue;
            }
            used[bi]++;
            for (int p : d.blocks[bi]) seen[p]++;
        }
        for (int p = 0; p < d.v(); p++)
            if (seen[p] != 1) {
                rep.violation("class " + std::to_string(ci) + " covers point " +
                              d.space.label(p).str() + " " + std::to_string(seen[p]) + " times");
                ok = false;
            }
    }
    for (size_t bi = 0; bi < used.size(); bi++)
        if (used[bi] != 1) {
            rep.violation("block " + std::to_string(bi) + " appears in " +
                          std::to_string(used[bi]) + " classes");
            ok = false;
        }
    rep.check("resolution", ok);
    return rep;
}

Report verify_design(const LabeledDesign& d) {
    Report rep;
    switch (d.kind) {
        case core::DesignKind::DD:
            rep = verify_dd(d);
            rep.merge(verify_super_simple(d));
            break;
        case core::DesignKind::DGDD:
            rep = verify_dgdd(d);
            rep.merge(verify_super_simple(d));
            break;
        default:
            rep = verify_unordered(d);
            break;
    }
    if (d.classes) rep.merge(verify_resolution(d));
    return rep;
}

}  // namespace dirdes::verify
