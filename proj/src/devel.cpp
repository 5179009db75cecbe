#include "dirdes/devel.hpp"

#include <numeric>
#include <stdexcept>

#include "dirdes/io.hpp"
#include "textscan.hpp"

namespace dirdes::devel {

using core::Label;
using core::LabeledDesign;
using core::ParseError;

namespace {

int mod_reduce(long long x, int m) {
    long long r = x % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

// Compact list form: runs of consecutive residues or INF indices become a..b.
std::string emit_label_list(const std::vector<Label>& ls) {
    std::string out;
    for (size_t i = 0; i < ls.size();) {
        size_t j = i;
        auto consecutive = [&](const Label& a, const Label& b) {
            return a.kind == b.kind && a.kind != Label::Kind::Pair && b.a == a.a + 1;
        };
        while (j + 1 < ls.size() && consecutive(ls[j], ls[j + 1])) j++;
        if (!out.empty()) out += ",";
        out += ls[i].str();
        if (j > i) out += ".." + ls[j].str();
        i = j + 1;
    }
    return out;
}

std::string emit_tuple(const std::vector<Label>& ls) {
    std::string out = "(";
    for (size_t i = 0; i < ls.size(); i++) {
        if (i) out += ", ";
        out += ls[i].str();
    }
    return out + ")";
}

}  // namespace

int OrbitAction::orbit_length() const {
    switch (kind) {
        case Kind::Fixed:
            return 1;
        case Kind::Cyclic:
            return modulus / std::gcd(mod_reduce(step, modulus), modulus);
        case Kind::Product: {
            long long la = stepA < 0 ? 1 : modA / std::gcd(mod_reduce(stepA, modA), modA);
            long long lb = modB / std::gcd(mod_reduce(stepB, modB), modB);
            return static_cast<int>(std::lcm(la, lb));
        }
        case Kind::Cycles: {
            long long l = 1;
            for (const auto& c : cycles) {
                int n = static_cast<int>(c.size());
                l = std::lcm(l, static_cast<long long>(n / std::gcd(mod_reduce(step, n), n)));
            }
            return static_cast<int>(l);
        }
    }
    return 1;
}

std::string OrbitAction::str() const {
    switch (kind) {
        case Kind::Fixed:
            return "none";
        case Kind::Cyclic:
            return "+" + std::to_string(step) + " mod " + std::to_string(modulus);
        case Kind::Product: {
            std::string a = stepA < 0 ? "-" : "+" + std::to_string(stepA) + " mod " + std::to_string(modA);
            return a + ",+" + std::to_string(stepB) + " mod " + std::to_string(modB);
        }
        case Kind::Cycles: {
            std::string out = "cycles ";
            for (const auto& c : cycles) out += "(" + emit_label_list(c) + ")";
            return out + " +" + std::to_string(step);
        }
    }
    return "none";
}

core::PointSpace ConstructionSpec::make_space() const {
    core::PointSpace sp;
    switch (spaceKind) {
        case SpaceKind::Mod:
            for (int i = 0; i < mod; i++) sp.add(Label::residue(i));
            break;
        case SpaceKind::Grid:
            for (int a = 0; a < gridM; a++)
                for (int b = 0; b < gridN; b++) sp.add(Label::pair(a, b));
            break;
        case SpaceKind::Labels:
            for (const auto& [lo, hi] : labelRanges)
                for (int x = lo.a; x <= hi.a; x++) sp.add(Label{lo.kind, x, 0});
            break;
    }
    for (int j = 0; j < inftyCount; j++) sp.add(Label::infinity(j));
    return sp;
}

namespace {

struct Parser {
    std::vector<ConstructionSpec> specs;
    ConstructionSpec* cur = nullptr;
    BaseBlockDirective* curBase = nullptr;

    ConstructionSpec& spec(detail::LineScanner& sc) {
        if (!cur) sc.fail("statement before any design line");
        return *cur;
    }

    OrbitAction parse_action(detail::LineScanner& sc) {
        OrbitAction a;
        if (sc.word("none")) {
            a.kind = OrbitAction::Kind::Fixed;
            return a;
        }
        if (sc.word("cycles")) {
            a.kind = OrbitAction::Kind::Cycles;
            while (sc.peek() == '(') {
                sc.expect('(');
                std::vector<Label> cyc;
                sc.label_range_into(cyc);
                while (sc.lit(',')) sc.label_range_into(cyc);
                sc.expect(')');
                a.cycles.push_back(std::move(cyc));
            }
            if (a.cycles.empty()) sc.fail("cycles action needs at least one cycle");
            sc.expect('+');
            a.step = sc.integer();
            return a;
        }
        auto comp = [&](int& step, int& mod) {
            sc.expect('+');
            step = sc.integer();
            if (!sc.word("mod")) sc.fail("expected mod");
            mod = sc.integer();
            if (mod <= 0) sc.fail("modulus must be positive");
        };
        if (sc.lit('-')) {
            a.kind = OrbitAction::Kind::Product;
            a.stepA = -1;
            sc.expect(',');
            comp(a.stepB, a.modB);
            return a;
        }
        comp(a.step, a.modulus);
        if (sc.lit(',')) {
            a.kind = OrbitAction::Kind::Product;
            a.stepA = a.step;
            a.modA = a.modulus;
            a.step = a.modulus = 0;
            comp(a.stepB, a.modB);
        } else {
            a.kind = OrbitAction::Kind::Cyclic;
        }
        return a;
    }

    void attach_action(detail::LineScanner& sc, OrbitAction a) {
        auto& s = spec(sc);
        if (curBase) {
            if (curBase->action) sc.fail("base already has a develop action");
            curBase->action = std::move(a);
        } else {
            if (s.defaultAction) sc.fail("duplicate default develop action");
            s.defaultAction = std::move(a);
        }
    }

    SubstitutionRule parse_sub(detail::LineScanner& sc) {
        SubstitutionRule r;
        Label t = sc.label();
        if (t.kind != Label::Kind::Infinity) sc.fail("sub target must be an INF label");
        r.target = t.a;
        if (sc.word("shift")) {
            r.kind = SubstitutionRule::Kind::ShiftIndexByValue;
            r.modulus = sc.integer();
            return r;
        }
        sc.expect('-');
        sc.expect('>');
        Label rep = sc.label();
        if (rep.kind != Label::Kind::Infinity) sc.fail("sub replacement must be an INF label");
        if (!sc.word("mod")) sc.fail("expected mod");
        r.modulus = sc.integer();
        if (!sc.word("res")) sc.fail("expected res");
        r.map[sc.integer()] = rep.a;
        while (sc.lit(',')) r.map[sc.integer()] = rep.a;
        return r;
    }

    // Modifier statements shared between inline-after-base and standalone lines.
    bool base_modifier(detail::LineScanner& sc) {
        auto need = [&]() -> BaseBlockDirective& {
            if (!curBase) sc.fail("modifier before any base block");
            return *curBase;
        };
        if (sc.word("count")) {
            need().count = sc.integer();
            return true;
        }
        if (sc.word("offset")) {
            need().offset = sc.integer();
            return true;
        }
        if (sc.word("sub")) {
            need().subs.push_back(parse_sub(sc));
            return true;
        }
        if (sc.word("patch")) {
            Patch p;
            p.from = sc.tuple();
            sc.expect('-');
            sc.expect('>');
            p.to = sc.tuple();
            if (p.from.size() != p.to.size()) sc.fail("patch tuples differ in length");
            need().patches.push_back(std::move(p));
            return true;
        }
        if (sc.word("develop")) {
            attach_action(sc, parse_action(sc));
            return true;
        }
        return false;
    }

    void groups_template(detail::LineScanner& sc) {
        auto& s = spec(sc);
        struct Lin {
            bool hasI = false;
            int c = 0;
        };
        auto lin = [&]() {
            Lin e;
            if (sc.word("i")) {
                e.hasI = true;
                if (sc.lit('+'))
                    e.c = sc.integer();
                else if (sc.peek() == '-')
                    e.c = sc.integer();
            } else {
                e.c = sc.integer();
            }
            return e;
        };
        struct Elt {
            bool pair = false;
            Lin a, b;
        };
        std::vector<Elt> elts;
        sc.expect('{');
        do {
            Elt e;
            if (sc.lit('(')) {
                e.pair = true;
                e.a = lin();
                sc.expect(',');
                e.b = lin();
                sc.expect(')');
            } else {
                e.a = lin();
            }
            elts.push_back(e);
        } while (sc.lit(','));
        sc.expect('}');
        if (!sc.word("for") || !sc.word("i") || !sc.word("in")) sc.fail("expected for i in");
        std::vector<int> is;
        int lo = sc.integer();
        if (sc.lit('.')) {
            sc.expect('.');
            int hi = sc.integer();
            for (int i = lo; i <= hi; i++) is.push_back(i);
        } else {
            is.push_back(lo);
            while (sc.lit(',')) is.push_back(sc.integer());
        }
        for (int i : is) {
            std::vector<Label> g;
            for (const auto& e : elts) {
                auto val = [&](const Lin& l, int m) {
                    long long x = (l.hasI ? i : 0) + l.c;
                    return m > 0 ? mod_reduce(x, m) : static_cast<int>(x);
                };
                if (e.pair)
                    g.push_back(Label::pair(val(e.a, s.gridM), val(e.b, s.gridN)));
                else
                    g.push_back(Label::residue(val(e.a, s.spaceKind == ConstructionSpec::SpaceKind::Mod ? s.mod : 0)));
            }
            s.groups.push_back(std::move(g));
        }
    }

    void statement(detail::LineScanner& sc) {
        if (sc.word("design")) {
            sc.ws();
            specs.emplace_back();
            cur = &specs.back();
            curBase = nullptr;
            cur->name = std::string(sc.s.substr(sc.pos));
            sc.pos = sc.s.size();
            if (cur->name.empty()) sc.fail("design needs a name");
            return;
        }
        if (sc.word("kind")) {
            auto k = core::kind_from_name(sc.ident());
            if (!k) sc.fail("unknown design kind");
            spec(sc).declaredKind = *k;
            return;
        }
        if (sc.word("space")) {
            auto& s = spec(sc);
            if (sc.word("mod")) {
                s.spaceKind = ConstructionSpec::SpaceKind::Mod;
                s.mod = sc.integer();
            } else if (sc.word("labels")) {
                s.spaceKind = ConstructionSpec::SpaceKind::Labels;
                do {
                    Label lo = sc.label(), hi = lo;
                    if (sc.lit('.')) {
                        sc.expect('.');
                        hi = sc.label();
                        if (hi.kind != lo.kind || hi.a < lo.a) sc.fail("bad label range");
                    }
                    s.labelRanges.emplace_back(lo, hi);
                } while (sc.lit(','));
            } else {
                s.spaceKind = ConstructionSpec::SpaceKind::Grid;
                s.gridM = sc.integer();
                if (!sc.lit('x')) sc.fail("expected MxN");
                s.gridN = sc.integer();
            }
            return;
        }
        if (sc.word("infty")) {
            spec(sc).inftyCount = sc.integer();
            return;
        }
        if (sc.word("groups")) {
            groups_template(sc);
            return;
        }
        if (sc.word("group")) {
            std::vector<Label> g;
            while (!sc.eol()) {
                sc.label_range_into(g);
                sc.lit(',');
            }
            if (g.empty()) sc.fail("empty group");
            spec(sc).groups.push_back(std::move(g));
            return;
        }
        if (sc.word("base")) {
            auto& s = spec(sc);
            s.bases.emplace_back();
            curBase = &s.bases.back();
            curBase->base = sc.tuple();
            while (!sc.eol())
                if (!base_modifier(sc)) sc.fail("unknown base modifier");
            return;
        }
        if (sc.word("embed")) {
            EmbedDirective e;
            sc.ws();
            size_t start = sc.pos;
            while (sc.pos < sc.s.size() && !std::isspace(static_cast<unsigned char>(sc.s[sc.pos])))
                sc.pos++;
            e.name = std::string(sc.s.substr(start, sc.pos - start));
            if (e.name.empty()) sc.fail("embed needs a design name");
            if (!sc.word("onto")) sc.fail("expected onto");
            while (!sc.eol()) {
                sc.label_range_into(e.onto);
                sc.lit(',');
            }
            spec(sc).embeds.push_back(std::move(e));
            return;
        }
        if (sc.word("claims")) {
            auto& c = spec(sc).claims;
            while (!sc.eol()) {
                std::string key = sc.ident();
                sc.expect('=');
                if (key == "blocks")
                    c.blocks = sc.integer();
                else if (key == "fnum")
                    c.fraction = {sc.integer(), c.fraction ? c.fraction->second : 0};
                else if (key == "fden") {
                    long long n = c.fraction ? c.fraction->first : 0;
                    c.fraction = {n, sc.integer()};
                } else if (key == "defining") {
                    int i = sc.integer();
                    sc.expect(',');
                    c.definingBlocks = {i, sc.integer()};
                } else
                    sc.fail("unknown claims key " + key);
            }
            return;
        }
        if (base_modifier(sc)) {
            if (!sc.eol()) sc.fail("trailing text after modifier");
            return;
        }
        sc.fail("unrecognized statement");
    }
};

}  // namespace

std::vector<ConstructionSpec> parse_catalog(const std::string& text) {
    Parser p;
    for (auto& [no, line] : detail::logical_lines(text)) {
        detail::LineScanner sc{line, 0, no};
        if (sc.eol()) continue;
        p.statement(sc);
        if (!sc.eol()) sc.fail("trailing text");
    }
    return std::move(p.specs);
}

ConstructionSpec parse_one(const std::string& text) {
    auto specs = parse_catalog(text);
    if (specs.size() != 1)
        throw ParseError("expected exactly one design, found " + std::to_string(specs.size()), 1, 1);
    return std::move(specs[0]);
}

std::string emit(const ConstructionSpec& s) {
    std::string out = "design " + s.name + "\n";
    out += "kind " + std::string(core::kind_name(s.declaredKind)) + "\n";
    switch (s.spaceKind) {
        case ConstructionSpec::SpaceKind::Mod:
            out += "space mod " + std::to_string(s.mod) + "\n";
            break;
        case ConstructionSpec::SpaceKind::Grid:
            out += "space " + std::to_string(s.gridM) + "x" + std::to_string(s.gridN) + "\n";
            break;
        case ConstructionSpec::SpaceKind::Labels: {
            out += "space labels ";
            for (size_t i = 0; i < s.labelRanges.size(); i++) {
                if (i) out += ",";
                out += s.labelRanges[i].first.str();
                if (!(s.labelRanges[i].first == s.labelRanges[i].second))
                    out += ".." + s.labelRanges[i].second.str();
            }
            out += "\n";
            break;
        }
    }
    if (s.inftyCount) out += "infty " + std::to_string(s.inftyCount) + "\n";
    for (const auto& g : s.groups) out += "group " + emit_label_list(g) + "\n";
    if (s.defaultAction) out += "develop " + s.defaultAction->str() + "\n";
    for (const auto& b : s.bases) {
        out += "base " + emit_tuple(b.base) + "\n";
        if (b.action) out += "develop " + b.action->str() + "\n";
        if (b.count) out += "count " + std::to_string(*b.count) + "\n";
        if (b.offset) out += "offset " + std::to_string(b.offset) + "\n";
        for (const auto& r : b.subs) {
            if (r.kind == SubstitutionRule::Kind::ShiftIndexByValue) {
                out += "sub INF" + std::to_string(r.target) + " shift " + std::to_string(r.modulus) + "\n";
            } else {
                std::map<int, std::vector<int>> byRep;
                for (auto [res, rep] : r.map) byRep[rep].push_back(res);
                for (auto& [rep, residues] : byRep) {
                    out += "sub INF" + std::to_string(r.target) + " -> INF" + std::to_string(rep) +
                           " mod " + std::to_string(r.modulus) + " res ";
                    for (size_t i = 0; i < residues.size(); i++)
                        out += (i ? "," : "") + std::to_string(residues[i]);
                    out += "\n";
                }
            }
        }
        for (const auto& p : b.patches)
            out += "patch " + emit_tuple(p.from) + " -> " + emit_tuple(p.to) + "\n";
    }
    for (const auto& e : s.embeds)
        out += "embed " + e.name + " onto " + emit_label_list(e.onto) + "\n";
    if (s.claims.blocks || s.claims.fraction || s.claims.definingBlocks) {
        out += "claims";
        if (s.claims.blocks) out += " blocks=" + std::to_string(*s.claims.blocks);
        if (s.claims.fraction)
            out += " fnum=" + std::to_string(s.claims.fraction->first) +
                   " fden=" + std::to_string(s.claims.fraction->second);
        if (s.claims.definingBlocks)
            out += " defining=" + std::to_string(s.claims.definingBlocks->first) + "," +
                   std::to_string(s.claims.definingBlocks->second);
        out += "\n";
    }
    return out;
}

namespace {

struct CyclePos {
    int cycle, pos;
};

Label apply_action(const OrbitAction& a, const std::map<Label, CyclePos>& cyclePos, Label l,
                   long long iter) {
    switch (a.kind) {
        case OrbitAction::Kind::Fixed:
            return l;
        case OrbitAction::Kind::Cyclic:
            if (l.kind == Label::Kind::Infinity) return l;
            if (l.kind != Label::Kind::Residue)
                throw std::runtime_error("cyclic development needs residue labels");
            return Label::residue(mod_reduce(l.a + iter * a.step, a.modulus));
        case OrbitAction::Kind::Product:
            if (l.kind == Label::Kind::Infinity) return l;
            if (l.kind != Label::Kind::Pair)
                throw std::runtime_error("product development needs pair labels");
            return Label::pair(a.stepA < 0 ? l.a : mod_reduce(l.a + iter * a.stepA, a.modA),
                               mod_reduce(l.b + iter * a.stepB, a.modB));
        case OrbitAction::Kind::Cycles: {
            auto it = cyclePos.find(l);
            if (it == cyclePos.end()) return l;
            const auto& cyc = a.cycles[it->second.cycle];
            int n = static_cast<int>(cyc.size());
            return cyc[mod_reduce(it->second.pos + iter * a.step, n)];
        }
    }
    return l;
}

}  // namespace

LabeledDesign develop_full(const ConstructionSpec& spec, std::vector<BlockProvenance>& prov,
                           const EmbedResolver& resolve) {
    LabeledDesign d;
    d.space = spec.make_space();
    d.kind = spec.declaredKind;
    d.ordered = spec.declaredKind == core::DesignKind::DD || spec.declaredKind == core::DesignKind::DGDD;
    d.lambda = 1;
    prov.clear();

    for (size_t di = 0; di < spec.bases.size(); di++) {
        const auto& dir = spec.bases[di];
        const OrbitAction* act = dir.action ? &*dir.action : (spec.defaultAction ? &*spec.defaultAction : nullptr);
        OrbitAction fixedAct;
        if (!act) act = &fixedAct;
        std::map<Label, CyclePos> cyclePos;
        if (act->kind == OrbitAction::Kind::Cycles)
            for (size_t c = 0; c < act->cycles.size(); c++)
                for (size_t p = 0; p < act->cycles[c].size(); p++)
                    cyclePos[act->cycles[c][p]] = {static_cast<int>(c), static_cast<int>(p)};

        int count = dir.count.value_or(act->orbit_length());
        std::vector<int> fired(dir.patches.size(), 0);
        for (int k = 0; k < count; k++) {
            long long iter = dir.offset + k;
            int val;
            if (act->kind == OrbitAction::Kind::Cyclic)
                val = mod_reduce(iter * act->step, act->modulus);
            else if (act->kind == OrbitAction::Kind::Product)
                val = mod_reduce(iter * act->stepB, act->modB);
            else
                val = static_cast<int>(iter * act->step);

            std::vector<Label> tup;
            tup.reserve(dir.base.size());
            for (const auto& l : dir.base) tup.push_back(apply_action(*act, cyclePos, l, iter));
            for (auto& l : tup) {
                if (l.kind != Label::Kind::Infinity) continue;
                for (const auto& r : dir.subs) {
                    if (r.target != l.a) continue;
                    int res = mod_reduce(val, r.modulus);
                    if (r.kind == SubstitutionRule::Kind::ShiftIndexByValue) {
                        l = Label::infinity(mod_reduce(l.a + val, r.modulus));
                        break;
                    }
                    auto it = r.map.find(res);
                    if (it != r.map.end()) {
                        l = Label::infinity(it->second);
                        break;
                    }
                }
            }
            for (size_t pi = 0; pi < dir.patches.size(); pi++)
                if (tup == dir.patches[pi].from) {
                    tup = dir.patches[pi].to;
                    fired[pi]++;
                }

            core::OrderedBlock blk;
            blk.reserve(tup.size());
            for (const auto& l : tup) blk.push_back(d.space.index_of(l));
            d.blocks.push_back(std::move(blk));
            prov.push_back({static_cast<int>(di), static_cast<int>(iter), val, {}});
        }
        for (size_t pi = 0; pi < dir.patches.size(); pi++)
            if (!fired[pi])
                throw std::runtime_error("patch " + emit_tuple(dir.patches[pi].from) +
                                         " never matched a developed block");
    }

    for (const auto& e : spec.embeds) {
        if (!resolve) throw std::runtime_error("embed " + e.name + " needs a resolver");
        LabeledDesign sub = resolve(e.name);
        if (sub.v() != static_cast<int>(e.onto.size()))
            throw std::runtime_error("embed " + e.name + " has " + std::to_string(sub.v()) +
                                     " points but onto lists " + std::to_string(e.onto.size()));
        std::vector<int> ontoIdx;
        ontoIdx.reserve(e.onto.size());
        for (const auto& l : e.onto) ontoIdx.push_back(d.space.index_of(l));
        for (size_t bi = 0; bi < sub.blocks.size(); bi++) {
            core::OrderedBlock blk;
            blk.reserve(sub.blocks[bi].size());
            for (int p : sub.blocks[bi]) blk.push_back(ontoIdx[p]);
            d.blocks.push_back(std::move(blk));
            prov.push_back({-1, static_cast<int>(bi), 0, e.name});
        }
    }

    if (!spec.groups.empty()) {
        d.partition.emplace();
        for (const auto& g : spec.groups) {
            std::vector<int> grp;
            grp.reserve(g.size());
            for (const auto& l : g) grp.push_back(d.space.index_of(l));
            d.partition->push_back(std::move(grp));
        }
    }
    return d;
}

LabeledDesign develop(const ConstructionSpec& spec, const EmbedResolver& resolve) {
    std::vector<BlockProvenance> prov;
    return develop_full(spec, prov, resolve);
}

}  // namespace dirdes::devel
