#include "dirdes/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "dirdes/io.hpp"
#include "dirdes/trades.hpp"
#include "dirdes/verify.hpp"

namespace dirdes::catalog {

namespace embedded {
extern const char* const kCatalogTexts[];
extern const int kCatalogTextCount;
extern const char* const kErrataText;
}  // namespace embedded

using core::DesignKind;
using core::GroupTypeSignature;
using core::LabeledDesign;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in.good()) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<Erratum> parse_errata(const std::string& text) {
    std::vector<Erratum> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        Erratum e;
        std::string* slot[4] = {&e.entry, &e.printed, &e.stored, &e.note};
        size_t start = 0;
        for (int i = 0; i < 4; i++) {
            size_t tab = line.find('\t', start);
            *slot[i] = line.substr(start, tab == std::string::npos ? tab : tab - start);
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (!e.entry.empty()) out.push_back(std::move(e));
    }
    return out;
}

Entry entry_from_spec(devel::ConstructionSpec spec) {
    Entry e;
    e.kind = spec.declaredKind;
    e.v = spec.make_space().size();
    for (const auto& g : spec.groups) e.sig.counts[static_cast<int>(g.size())]++;
    e.claims = spec.claims;
    e.name = spec.name;
    std::string canonical = e.kind == DesignKind::DD
                                ? "DD(" + std::to_string(e.v) + ")"
                                : std::string(core::kind_name(e.kind)) + "(" + e.sig.str() + ")";
    if (e.name != canonical)
        throw std::runtime_error("catalog entry " + e.name + " should be named " + canonical);
    e.route = "developed from base blocks";
    e.spec = std::move(spec);
    return e;
}

Entry composed_entry(const std::string& name, DesignKind kind, int v, const std::string& sig,
                     long long blocks, const std::string& recipe, const std::string& route) {
    Entry e;
    e.name = name;
    e.kind = kind;
    e.v = v;
    if (!sig.empty()) e.sig = *GroupTypeSignature::parse(sig);
    e.recipe = recipe;
    e.route = route;
    e.claims.blocks = blocks;
    e.claims.fraction = {{(blocks + 1) / 2, blocks}};
    return e;
}

void append_composed(std::vector<Entry>& entries) {
    entries.push_back(composed_entry(
        "DGDD(10^6)", DesignKind::DGDD, 60, "10^6", 300,
        "master catalog:DGDD(2^6)\nweight default 5\ningredient sig=5^5 td 5 5\n",
        "every block of DGDD(2^6) widened five-fold through TD(5,5)"));
    entries.push_back(composed_entry(
        "DD(71)", DesignKind::DD, 71, "", 497,
        "master catalog:DGDD(10^7)\nadd 1\nfill default catalog:DD(11)\n",
        "DGDD(10^7) plus one point, every group filled with DD(11)"));
    entries.push_back(composed_entry(
        "DD(141)", DesignKind::DD, 141, "", 1974,
        "master catalog:DGDD(5^7)\nweight default 4\ningredient sig=4^5 td 5 4\n"
        "add 1\nfill default catalog:DD(21)\n",
        "weight-4 expansion of DGDD(5^7) via TD(5,4), one added point, DD(21) fills"));
    entries.push_back(composed_entry(
        "DD(151)", DesignKind::DD, 151, "", 2265,
        "master sig=5^5 td 5 5\nweight default 6\ningredient catalog:DGDD(6^5)\n"
        "add 1\nfill default catalog:DD(31)\n",
        "weight-6 expansion of TD(5,5) via DGDD(6^5), one added point, DD(31) fills"));
    entries.push_back(composed_entry(
        "DD(155)", DesignKind::DD, 155, "", 2387,
        "master twisted 5 31\nadd 0\nfill default catalog:DD(31)\n",
        "quadratic-twist DGDD(31^5) over GF(31), every group filled with DD(31)"));
    entries.push_back(composed_entry(
        "DD(161)", DesignKind::DD, 161, "", 2576,
        "master catalog:DGDD(20^8)\nadd 1\nfill default catalog:DD(21)\n",
        "DGDD(20^8) plus one point, every group filled with DD(21)"));
}

// name comparison with numeric runs ordered by value
bool natural_less(const std::string& a, const std::string& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (isdigit(static_cast<unsigned char>(a[i])) && isdigit(static_cast<unsigned char>(b[j]))) {
            size_t i2 = i, j2 = j;
            while (i2 < a.size() && isdigit(static_cast<unsigned char>(a[i2]))) i2++;
            while (j2 < b.size() && isdigit(static_cast<unsigned char>(b[j2]))) j2++;
            long long x = std::stoll(a.substr(i, i2 - i)), y = std::stoll(b.substr(j, j2 - j));
            if (x != y) return x < y;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            i++;
            j++;
        }
    }
    return a.size() < b.size();
}

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> row(b.size() + 1);
    for (size_t j = 0; j <= b.size(); j++) row[j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); i++) {
        int diag = row[0];
        row[0] = static_cast<int>(i);
        for (size_t j = 1; j <= b.size(); j++) {
            int next = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1])});
            diag = row[j];
            row[j] = next;
        }
    }
    return row[b.size()];
}

}  // namespace

Catalog Catalog::load() {
    Catalog c;
    std::vector<std::string> texts;
    const char* dir = std::getenv("DIRDES_CATALOG");
    if (dir && *dir) {
        std::vector<std::filesystem::path> files;
        for (const auto& ent : std::filesystem::directory_iterator(dir))
            if (ent.path().extension() == ".dd") files.push_back(ent.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) texts.push_back(read_file(f));
    } else {
        for (int i = 0; i < embedded::kCatalogTextCount; i++)
            texts.emplace_back(embedded::kCatalogTexts[i]);
    }
    for (const auto& text : texts)
        for (auto& spec : devel::parse_catalog(text)) c.entries_.push_back(entry_from_spec(std::move(spec)));
    append_composed(c.entries_);
    std::sort(c.entries_.begin(), c.entries_.end(),
              [](const Entry& a, const Entry& b) { return natural_less(a.name, b.name); });
    c.errata_ = parse_errata(embedded::kErrataText);
    return c;
}

const Entry* Catalog::find(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name || (e.spec && e.spec->name == name)) return &e;
    return nullptr;
}

const Entry* Catalog::find_dd(int v) const {
    for (const auto& e : entries_)
        if (e.kind == DesignKind::DD && e.v == v) return &e;
    return nullptr;
}

const Entry* Catalog::find_dgdd(const GroupTypeSignature& sig) const {
    for (const auto& e : entries_)
        if (e.kind == DesignKind::DGDD && e.sig == sig) return &e;
    return nullptr;
}

std::vector<std::string> Catalog::nearest(const std::string& name, int count) const {
    std::vector<std::pair<int, std::string>> scored;
    for (const auto& e : entries_) scored.emplace_back(edit_distance(name, e.name), e.name);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (int i = 0; i < count && i < static_cast<int>(scored.size()); i++)
        out.push_back(scored[i].second);
    return out;
}

LabeledDesign Catalog::build(const Entry& e) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = built_.find(e.name);
        if (it != built_.end()) return *it->second;
    }
    LabeledDesign d;
    if (e.spec) {
        d = devel::develop(*e.spec, [this](const std::string& n) { return build(n); });
    } else {
        compose::CompositionRecipe r = compose::parse_recipe(e.recipe);
        d = compose::run_recipe(r, registry()).design;
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        built_.emplace(e.name, std::make_shared<const LabeledDesign>(d));
    }
    return d;
}

LabeledDesign Catalog::build(const std::string& name) const {
    const Entry* e = find(name);
    if (!e) {
        std::string near;
        for (const auto& n : nearest(name)) near += (near.empty() ? "" : ", ") + n;
        throw std::runtime_error("no catalog entry " + name + " (nearest: " + near + ")");
    }
    return build(*e);
}

const compose::IngredientRegistry& Catalog::registry() const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (registry_) return *registry_;
    }
    auto reg = std::make_shared<compose::IngredientRegistry>();
    for (const auto& e : entries_)
        if (e.spec) reg->add(e.name, build(e));
    const char* dir = std::getenv("DIRDES_INGREDIENTS");
    if (dir && *dir) {
        std::vector<std::filesystem::path> files;
        for (const auto& ent : std::filesystem::directory_iterator(dir))
            if (ent.path().extension() == ".dd") files.push_back(ent.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) reg->add(f.stem().string(), io::read_design(read_file(f)));
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (!registry_) registry_ = reg;
    return *registry_;
}

std::vector<AuditRow> audit_all(const Catalog& c, int threads) {
    const auto& entries = c.entries();
    std::vector<AuditRow> rows(entries.size());
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, static_cast<int>(entries.size()));

    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1)) {
            const Entry& e = entries[i];
            AuditRow& row = rows[i];
            row.name = e.name;
            row.claimedBlocks = e.claims.blocks.value_or(0);
            for (const auto& err : c.errata())
                if (err.entry == e.name) row.errata = true;
            try {
                LabeledDesign d = c.build(e);
                row.blocks = static_cast<long long>(d.blocks.size());
                verify::Report rep = verify::verify_design(d);
                if (!rep.pass) {
                    row.detail = "verification failed: " + rep.violations.front();
                    continue;
                }
                if (e.claims.blocks && *e.claims.blocks != row.blocks) {
                    row.detail = "block count " + std::to_string(row.blocks) + " != claimed " +
                                 std::to_string(*e.claims.blocks);
                    continue;
                }
                if (e.claims.definingBlocks) {
                    auto [b1, b2] = *e.claims.definingBlocks;
                    auto res = trades::completion_search(d, {b1, b2});
                    row.boundGoal = 2;
                    row.bound = res == trades::CompletionCount::Unique ? 2 : 0;
                    if (res != trades::CompletionCount::Unique) {
                        row.detail = "claimed defining pair does not determine the design";
                        continue;
                    }
                } else if (e.claims.fraction) {
                    auto [num, den] = *e.claims.fraction;
                    row.boundGoal = (num == 1 && den == 2) ? (row.blocks + 1) / 2 : num;
                    trades::TradeCertificate cert = trades::defining_bound(d);
                    row.bound = cert.bound;
                    if (row.bound < row.boundGoal) {
                        row.detail = "certified bound " + std::to_string(row.bound) +
                                     " below claimed " + std::to_string(row.boundGoal);
                        continue;
                    }
                }
                row.pass = true;
            } catch (const std::exception& ex) {
                row.detail = ex.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; t++) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return rows;
}

std::string audit_table(const std::vector<AuditRow>& rows) {
    std::ostringstream out;
    size_t w = 4;
    for (const auto& r : rows) w = std::max(w, r.name.size());
    out << std::left;
    for (const auto& r : rows) {
        out.width(static_cast<std::streamsize>(w + 2));
        out << r.name;
        out << (r.pass ? "pass" : "FAIL");
        out << "  blocks=" << r.blocks;
        if (r.boundGoal > 0) out << "  bound=" << r.bound << "/" << r.boundGoal;
        if (r.errata) out << "  [errata]";
        if (!r.detail.empty()) out << "  " << r.detail;
        out << "\n";
    }
    return out.str();
}

}  // namespace dirdes::catalog
