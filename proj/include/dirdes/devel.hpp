#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirdes/core.hpp"

namespace dirdes::devel {

// How a base block is moved through the point space.
struct OrbitAction {
    enum class Kind : uint8_t { Fixed, Cyclic, Product, Cycles };
    Kind kind = Kind::Fixed;
    // Cyclic: x -> (x + step) mod modulus.
    int step = 0;
    int modulus = 0;
    // Product: per-coordinate steps on an MxN grid; stepA < 0 keeps the first
    // coordinate fixed.
    int stepA = 0, stepB = 0, modA = 0, modB = 0;
    // Cycles: disjoint label cycles advanced together by `step` positions.
    std::vector<std::vector<core::Label>> cycles;

    bool operator==(const OrbitAction&) const = default;
    int orbit_length() const;
    std::string str() const;
};

// Rewrites infinity points of a developed block, keyed on the added value.
struct SubstitutionRule {
    enum class Kind : uint8_t { MapByResidue, ShiftIndexByValue };
    Kind kind = Kind::MapByResidue;
    int target = 0;   // INF index the rule applies to
    int modulus = 1;  // modulus on the added value
    std::map<int, int> map;  // MapByResidue: value residue -> replacement INF index

    bool operator==(const SubstitutionRule&) const = default;
};

// Exact developed-tuple rewrite, applied after substitutions.  Each patch must
// fire at least once over the directive it belongs to.
struct Patch {
    std::vector<core::Label> from, to;
    bool operator==(const Patch&) const = default;
};

struct BaseBlockDirective {
    std::vector<core::Label> base;
    std::optional<OrbitAction> action;  // falls back to the design default
    std::optional<int> count;           // develop only this many iterations
    int offset = 0;                     // start development at this iteration
    std::vector<SubstitutionRule> subs;
    std::vector<Patch> patches;
};

struct EmbedDirective {
    std::string name;
    std::vector<core::Label> onto;
};

struct Claims {
    std::optional<long long> blocks;
    std::optional<std::pair<long long, long long>> fraction;  // defining-set fraction
    std::optional<std::pair<int, int>> definingBlocks;         // bold pair, block indices
};

struct ConstructionSpec {
    std::string name;
    core::DesignKind declaredKind = core::DesignKind::DD;
    enum class SpaceKind : uint8_t { Mod, Grid, Labels } spaceKind = SpaceKind::Mod;
    int mod = 0;
    int gridM = 0, gridN = 0;
    std::vector<std::pair<core::Label, core::Label>> labelRanges;
    int inftyCount = 0;
    // groups either listed explicitly or generated from a template
    std::vector<std::vector<core::Label>> groups;
    std::optional<OrbitAction> defaultAction;
    std::vector<BaseBlockDirective> bases;
    std::vector<EmbedDirective> embeds;
    Claims claims;

    core::PointSpace make_space() const;
};

std::vector<ConstructionSpec> parse_catalog(const std::string& text);
ConstructionSpec parse_one(const std::string& text);
std::string emit(const ConstructionSpec& spec);

// Where a developed block came from: directive index, iteration, added value.
struct BlockProvenance {
    int directive = -1;  // -1 for embedded blocks
    int iter = 0;
    int value = 0;
    std::string embed;
};

using EmbedResolver = std::function<core::LabeledDesign(const std::string&)>;

core::LabeledDesign develop(const ConstructionSpec& spec,
                            const EmbedResolver& resolve = nullptr);
core::LabeledDesign develop_full(const ConstructionSpec& spec,
                                 std::vector<BlockProvenance>& prov,
                                 const EmbedResolver& resolve = nullptr);

}  // namespace dirdes::devel
