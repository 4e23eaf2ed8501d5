#ifndef PSYS_MODEL_HPP
#define PSYS_MODEL_HPP

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "psys/multiset.hpp"

namespace psys {

/// Region/cell label. 0 always denotes the environment.
using Label = int;
inline constexpr Label kEnvironment = 0;

/**
 * Tree of membranes labelled 1..n. parent(l) is 0 for the skin.
 */
class MembraneStructure {
public:
    MembraneStructure() = default;
    /// parents[l - 1] is the parent label of membrane l (0 for the skin).
    explicit MembraneStructure(std::vector<Label> parents) : parent_(std::move(parents)) {}

    /// Single-membrane structure.
    static MembraneStructure skin_only() { return MembraneStructure({0}); }

    int degree() const { return static_cast<int>(parent_.size()); }
    bool contains(Label l) const { return l >= 1 && l <= degree(); }
    Label parent(Label l) const { return parent_.at(static_cast<std::size_t>(l - 1)); }
    /// Region surrounding membrane l; the environment for the skin.
    Label outer(Label l) const { return parent(l); }
    Label skin() const;
    std::vector<Label> children(Label l) const;
    bool is_elementary(Label l) const { return children(l).empty(); }

    /// Empty string when parent_ is a rooted tree over 1..n, else a reason.
    std::string tree_defect() const;

    const std::vector<Label>& parents() const { return parent_; }

    friend bool operator==(const MembraneStructure&, const MembraneStructure&) = default;

private:
    std::vector<Label> parent_;
};

/// `1(2 3(4))` form, children in label order.
std::string to_string(const MembraneStructure& mu);

enum class CellRuleKind { SymportIn, SymportOut, Antiport };

/// (x,in), (y,out) or (y,out;x,in) attached to a region.
struct CellRule {
    Label region = 1;
    CellRuleKind kind = CellRuleKind::SymportIn;
    Multiset out;  // y: leaves the region
    Multiset in;   // x: enters the region from the outer region

    static CellRule symport_in(Label region, Multiset x) {
        return {region, CellRuleKind::SymportIn, {}, std::move(x)};
    }
    static CellRule symport_out(Label region, Multiset y) {
        return {region, CellRuleKind::SymportOut, std::move(y), {}};
    }
    static CellRule antiport(Label region, Multiset y_out, Multiset x_in) {
        return {region, CellRuleKind::Antiport, std::move(y_out), std::move(x_in)};
    }

    friend bool operator==(const CellRule&, const CellRule&) = default;
    friend auto operator<=>(const CellRule&, const CellRule&) = default;
};

struct CellPSystem {
    std::set<ObjectId> alphabet;
    MembraneStructure structure;
    std::vector<Multiset> init;  // init[l - 1] = w_l
    std::set<ObjectId> env;      // E
    std::vector<CellRule> rules;
    Label output = 1;

    int degree() const { return structure.degree(); }
    const Multiset& initial(Label l) const { return init.at(static_cast<std::size_t>(l - 1)); }

    friend bool operator==(const CellPSystem&, const CellPSystem&) = default;
};

enum class TissueRuleKind { Symport, Antiport };

/// (i,x,j) moves x from i to j; (i,x/y,j) swaps x in i with y in j.
struct TissueRule {
    TissueRuleKind kind = TissueRuleKind::Symport;
    Label from = 0;
    Multiset x;
    Multiset y;  // empty for symport
    Label to = 1;

    static TissueRule symport(Label i, Multiset x, Label j) {
        return {TissueRuleKind::Symport, i, std::move(x), {}, j};
    }
    static TissueRule antiport(Label i, Multiset x, Multiset y, Label j) {
        return {TissueRuleKind::Antiport, i, std::move(x), std::move(y), j};
    }

    friend bool operator==(const TissueRule&, const TissueRule&) = default;
    friend auto operator<=>(const TissueRule&, const TissueRule&) = default;
};

struct TissuePSystem {
    std::set<ObjectId> alphabet;
    int n_cells = 1;
    std::vector<Multiset> init;  // init[c - 1] = w_c
    std::set<ObjectId> env;
    std::vector<TissueRule> rules;
    Label output = 1;

    int degree() const { return n_cells; }
    const Multiset& initial(Label c) const { return init.at(static_cast<std::size_t>(c - 1)); }

    friend bool operator==(const TissuePSystem&, const TissuePSystem&) = default;
};

/// (a,i)(b,j) -> (a,k)(b,l)
struct InteractionRule {
    ObjectId a;
    Label i = 0;
    ObjectId b;
    Label j = 0;
    Label k = 0;
    Label l = 0;

    friend bool operator==(const InteractionRule&, const InteractionRule&) = default;
    friend auto operator<=>(const InteractionRule&, const InteractionRule&) = default;
};

/// Role swap (b,j)(a,i) -> (b,l)(a,k).
InteractionRule swap_roles(const InteractionRule& r);

/// (a,i) -> (a,k)
struct UniportRule {
    ObjectId a;
    Label i = 0;
    Label k = 0;

    friend bool operator==(const UniportRule&, const UniportRule&) = default;
    friend auto operator<=>(const UniportRule&, const UniportRule&) = default;
};

using MinimalRule = std::variant<InteractionRule, UniportRule>;

/// Minimal interaction tissue system: cells 1..n, node 0 the environment.
struct InteractionSystem {
    std::set<ObjectId> alphabet;
    int n_cells = 1;
    std::vector<Multiset> init;
    std::set<ObjectId> env;
    std::vector<MinimalRule> rules;
    Label output = 1;

    int degree() const { return n_cells; }
    const Multiset& initial(Label c) const { return init.at(static_cast<std::size_t>(c - 1)); }

    friend bool operator==(const InteractionSystem&, const InteractionSystem&) = default;
};

using AnySystem = std::variant<CellPSystem, TissuePSystem, InteractionSystem>;

enum class Severity { Error, Warning };

struct Violation {
    std::string code;      // stable, e.g. "V001"
    std::string name;      // short slug, e.g. "skin-E-symport"
    std::string location;  // e.g. "rule 3" or "output"
    std::string message;
    Severity severity = Severity::Error;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const;  // no errors (warnings allowed)
    bool has(const std::string& code) const;
    std::size_t error_count() const;
};

ValidationReport validate_cell(const CellPSystem& sys);
ValidationReport validate_tissue(const TissuePSystem& sys);
ValidationReport validate_interaction(const InteractionSystem& sys);
ValidationReport validate(const AnySystem& sys);

/// Edges (i, j) induced by the rules; antiport rules contribute both directions.
std::set<std::pair<Label, Label>> derive_graph(const TissuePSystem& sys);

/// Membranes become cells, the skin's outer region becomes node 0.
/// Throws std::invalid_argument if `sys` does not validate.
TissuePSystem encode_cell_as_tissue(const CellPSystem& sys);

/// Rules sorted and deduplicated; used for structural comparison.
CellPSystem canonical(CellPSystem sys);
TissuePSystem canonical(TissuePSystem sys);
InteractionSystem canonical(InteractionSystem sys);

bool structurally_equal(const AnySystem& a, const AnySystem& b);

/// Region sizes of a system description, shared by all variants.
int degree_of(const AnySystem& sys);

std::string to_string(const CellRule& r);
std::string to_string(const TissueRule& r);
std::string to_string(const InteractionRule& r);
std::string to_string(const UniportRule& r);
std::string to_string(const MinimalRule& r);

}  // namespace psys

#endif  // PSYS_MODEL_HPP
