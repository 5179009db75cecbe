#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dirdes/core.hpp"

namespace dirdes::compose {

// ----- building stock: transversal designs and friends ------------------

// TD(k,q) for prime-power q, k <= q+1, on points (i, x); group i is column i.
core::LabeledDesign td_from_mols(int k, int q);

// Remove the last `removed` points of one group; blocks shrink accordingly.
core::LabeledDesign truncate_td(const core::LabeledDesign& td, int group, int removed);

// Blocks through the deleted point become the groups of the result.
core::LabeledDesign delete_point(const core::LabeledDesign& pbd, int p);

// Add a point completing every group to a block, then delete z: a TD(k,n)
// becomes a {k, n+1}-GDD of type (k-1)^n n^1.
core::LabeledDesign adjoin_and_delete(const core::LabeledDesign& td, int z);

// TD(k,q) with parallel classes, made by deleting one group of TD(k+1,q).
core::LabeledDesign resolvable_td(int k, int q);

// Add x new points, point i joining every block of class i; x must not
// exceed the number of classes.
core::LabeledDesign extend_resolvable(const core::LabeledDesign& rtd, int x);

// Two transversal squares that disagree by a quadratic twist; any block of
// one meets any block of the other in at most two points.  Directing the
// first forward and the second reversed gives a super-simple DGDD(q^k).
core::LabeledDesign twisted_dgdd(int k, int q);

// ----- ingredient store --------------------------------------------------

class IngredientRegistry {
public:
    // Verifies the design before storing it; throws if it does not check out.
    void add(const std::string& name, core::LabeledDesign d);

    const core::LabeledDesign* find_by_name(const std::string& name) const;
    // Ordered ingredient with the given group type.
    const core::LabeledDesign* find_dgdd(const core::GroupTypeSignature& sig) const;
    // Unordered ingredient (TD/GDD) with the given group type.
    const core::LabeledDesign* find_gdd(const core::GroupTypeSignature& sig) const;
    const core::LabeledDesign* find_dd(int v) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, std::shared_ptr<core::LabeledDesign>> byName_;
    std::map<std::string, std::shared_ptr<core::LabeledDesign>> dgddBySig_, gddBySig_;
    std::map<int, std::shared_ptr<core::LabeledDesign>> ddByV_;
};

// ----- weighted composition ---------------------------------------------

struct WeightAssignment {
    int defaultWeight = 1;
    std::map<int, int> perPoint;  // master point index -> weight
    int of(int p) const {
        auto it = perPoint.find(p);
        return it == perPoint.end() ? defaultWeight : it->second;
    }
};

struct BlockOrigin {
    enum class From : uint8_t { Master, Fill, Embed };
    From from = From::Master;
    int masterBlock = -1;  // expanded master block, when from == Master
    int group = -1;        // filled group, when from == Fill
    std::string source;    // ingredient or filler name when known
};

struct ComposedDesign {
    core::LabeledDesign design;
    std::vector<BlockOrigin> origins;
};

// Replace every master point by a fiber of its weight.  An unordered master
// uses an ordered ingredient of matching group type per block; an ordered
// master uses an unordered one whose blocks borrow the master block's order.
// The result is verified before it is returned.
ComposedDesign wilson_compose(const core::LabeledDesign& master, const WeightAssignment& w,
                              const IngredientRegistry& reg);

// Every master block expanded by TD(5, factor) in master-block order.
ComposedDesign product_expand(const core::LabeledDesign& dgdd, int factor);

// Add m new points shared by all groups, then fill each group plus the new
// points with its filler: a full design of matching size, or an ordered
// ingredient of type 1^g m^1 whose m-group lands on the new points.  The
// result is verified before it is returned.
ComposedDesign fill_groups(const core::LabeledDesign& dgdd, int m,
                           const std::vector<const core::LabeledDesign*>& fillers);

// ----- recipes -----------------------------------------------------------

struct CompositionRecipe {
    struct Ref {
        enum class Kind : uint8_t { Catalog, File, Td, Twisted } kind = Kind::Catalog;
        std::string name;  // catalog entry or file path
        int k = 0, q = 0;  // td / twisted parameters
        std::string sig;   // optional declared group type, checked on resolve
    };
    std::optional<Ref> master;
    int defaultWeight = 1;
    std::vector<std::pair<std::string, int>> pointWeights;  // label text -> weight
    std::vector<Ref> ingredients;
    int add = 0;
    std::optional<Ref> fillDefault;
    std::map<int, Ref> fillByGroup;
};

CompositionRecipe parse_recipe(const std::string& text);

// Resolve refs through the registry (catalog: names and bare names) or the
// filesystem, run the composition, and return the result.
ComposedDesign run_recipe(const CompositionRecipe& r, const IngredientRegistry& reg);

}  // namespace dirdes::compose
