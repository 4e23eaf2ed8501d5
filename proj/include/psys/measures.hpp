#ifndef PSYS_MEASURES_HPP
#define PSYS_MEASURES_HPP

#include <string>
#include <string_view>

#include "psys/model.hpp"

namespace psys {

/// Which antiport size convention a profile was computed with.
enum class SizeMeasure {
    CellMax,    // antiport (y,out;x,in) has size max(|x|,|y|)
    TissueSum,  // antiport (i,x/y,j) has size |x|+|y|
};

std::string_view to_string(SizeMeasure m);

struct ComplexityProfile {
    int degree = 0;
    Count max_symport_size = 0;
    Count max_antiport_size = 0;
    std::size_t num_objects = 0;
    std::size_t num_rules = 0;
    SizeMeasure measure = SizeMeasure::CellMax;

    friend bool operator==(const ComplexityProfile&, const ComplexityProfile&) = default;
};

Count cell_rule_size(const CellRule& r);
Count tissue_rule_size(const TissueRule& r);

ComplexityProfile profile(const CellPSystem& sys);
ComplexityProfile profile(const TissuePSystem& sys);

enum class RuleClass {
    ConditionalUniportOut,
    ConditionalUniportIn,
    Symport2,
    Antiport1,
    PresenceMove,
    Separation,
    Joining,
    Chain,
    ParallelShift,
    NoOp,
};

std::string_view to_string(RuleClass c);

/// Class of (a,i)(b,j) -> (a,k)(b,l), decided by which of i,j,k,l coincide.
/// Invariant under swapping the roles of a and b.
RuleClass classify(const InteractionRule& r);

}  // namespace psys

#endif  // PSYS_MEASURES_HPP
