#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirdes::core {

// A point label as it appears in catalog text and design files: a plain
// residue, a coordinate pair, or an infinity marker INFj.
struct Label {
    enum class Kind : uint8_t { Residue, Pair, Infinity };
    Kind kind = Kind::Residue;
    int a = 0;  // residue value, first coordinate, or infinity index
    int b = 0;  // second coordinate (Pair only)

    static Label residue(int v) { return {Kind::Residue, v, 0}; }
    static Label pair(int x, int y) { return {Kind::Pair, x, y}; }
    static Label infinity(int j) { return {Kind::Infinity, j, 0}; }

    bool operator==(const Label&) const = default;
    auto operator<=>(const Label&) const = default;
    std::string str() const;
};

// Finite label set with a fixed dense indexing: finite labels first in
// declaration order, then INF0..INFm-1.
class PointSpace {
  public:
    void add(const Label& l);
    int size() const { return static_cast<int>(labels_.size()); }
    const Label& label(int i) const { return labels_.at(static_cast<size_t>(i)); }
    const std::vector<Label>& labels() const { return labels_; }
    std::optional<int> find(const Label& l) const;
    int index_of(const Label& l) const;  // throws std::out_of_range on miss

  private:
    std::vector<Label> labels_;
    std::map<Label, int> index_;
};

using OrderedBlock = std::vector<int>;  // distinct point indices

enum class DesignKind : uint8_t { DD, DGDD, BIBD, GDD, PBD, TD };
const char* kind_name(DesignKind k);
std::optional<DesignKind> kind_from_name(const std::string& s);

struct LabeledDesign {
    PointSpace space;
    DesignKind kind = DesignKind::DD;
    int lambda = 1;
    bool ordered = true;
    std::vector<OrderedBlock> blocks;
    // groups, as point indices; present for DGDD/GDD/TD
    std::optional<std::vector<std::vector<int>>> partition;
    // resolution classes, as block indices; present for resolvable designs
    std::optional<std::vector<std::vector<int>>> classes;

    int v() const { return space.size(); }
};

// Multiset of group sizes, printed like "4^5 6^1" (ascending size).
struct GroupTypeSignature {
    std::map<int, int> counts;  // size -> multiplicity

    static GroupTypeSignature of(const LabeledDesign& d);
    static std::optional<GroupTypeSignature> parse(const std::string& s);
    std::string str() const;
    long long point_total() const;
    bool operator==(const GroupTypeSignature&) const = default;
};

// The C(len,2) ordered pairs (b[i], b[j]) with i < j.
std::vector<std::pair<int, int>> ordered_pairs_of(const OrderedBlock& b);

// Dense v*v pair-coverage counts. Ordered designs count (x,y) subsequences;
// unordered designs count each pair once at (min,max).
class PairTable {
  public:
    explicit PairTable(int v) : v_(v), c_(static_cast<size_t>(v) * v, 0) {}
    int v() const { return v_; }
    int32_t& at(int x, int y) { return c_[static_cast<size_t>(x) * v_ + y]; }
    int32_t at(int x, int y) const { return c_[static_cast<size_t>(x) * v_ + y]; }
    long long total() const;

  private:
    int v_;
    std::vector<int32_t> c_;
};

PairTable pair_table(const LabeledDesign& d);

// Forgets block order: DD -> BIBD, DGDD -> GDD, lambda doubles for ordered
// inputs. Blocks keep their stored order of appearance.
LabeledDesign underlying(const LabeledDesign& d);

bool valid_block(const LabeledDesign& d, const OrderedBlock& b);

}  // namespace dirdes::core
