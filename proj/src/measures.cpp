#include "psys/measures.hpp"

#include <algorithm>

namespace psys {

std::string_view to_string(SizeMeasure m) {
    return m == SizeMeasure::CellMax ? "cell-max" : "tissue-sum";
}

Count cell_rule_size(const CellRule& r) {
    switch (r.kind) {
        case CellRuleKind::SymportIn: return r.in.size();
        case CellRuleKind::SymportOut: return r.out.size();
        case CellRuleKind::Antiport: return std::max(r.in.size(), r.out.size());
    }
    return 0;
}

Count tissue_rule_size(const TissueRule& r) {
    if (r.kind == TissueRuleKind::Symport) return r.x.size();
    return checked_add(r.x.size(), r.y.size());
}

ComplexityProfile profile(const CellPSystem& sys) {
    ComplexityProfile p;
    p.degree = sys.degree();
    p.num_objects = sys.alphabet.size();
    p.num_rules = sys.rules.size();
    p.measure = SizeMeasure::CellMax;
    for (const auto& r : sys.rules) {
        auto& slot = r.kind == CellRuleKind::Antiport ? p.max_antiport_size : p.max_symport_size;
        slot = std::max(slot, cell_rule_size(r));
    }
    return p;
}

ComplexityProfile profile(const TissuePSystem& sys) {
    ComplexityProfile p;
    p.degree = sys.degree();
    p.num_objects = sys.alphabet.size();
    p.num_rules = sys.rules.size();
    p.measure = SizeMeasure::TissueSum;
    for (const auto& r : sys.rules) {
        auto& slot = r.kind == TissueRuleKind::Antiport ? p.max_antiport_size : p.max_symport_size;
        slot = std::max(slot, tissue_rule_size(r));
    }
    return p;
}

std::string_view to_string(RuleClass c) {
    switch (c) {
        case RuleClass::ConditionalUniportOut: return "conditional-uniport-out";
        case RuleClass::ConditionalUniportIn: return "conditional-uniport-in";
        case RuleClass::Symport2: return "symport2";
        case RuleClass::Antiport1: return "antiport1";
        case RuleClass::PresenceMove: return "presence-move";
        case RuleClass::Separation: return "separation";
        case RuleClass::Joining: return "joining";
        case RuleClass::Chain: return "chain";
        case RuleClass::ParallelShift: return "parallel-shift";
        case RuleClass::NoOp: return "no-op";
    }
    return "?";
}

RuleClass classify(const InteractionRule& r) {
    const bool ij = r.i == r.j, ik = r.i == r.k, il = r.i == r.l;
    const bool jk = r.j == r.k, jl = r.j == r.l, kl = r.k == r.l;
    const int pairs = ij + ik + il + jk + jl + kl;

    // Neither object moves.
    if (ik && jl) return RuleClass::NoOp;

    switch (pairs) {
        case 3:  // exactly three labels coincide
            if (ij && ik) return RuleClass::ConditionalUniportOut;  // i=j=k != l
            if (ij && il) return RuleClass::ConditionalUniportOut;  // swapped
            if (ik && il) return RuleClass::ConditionalUniportIn;   // i=k=l != j
            return RuleClass::ConditionalUniportIn;                 // j=k=l != i
        case 2:  // two disjoint pairs (ik|jl was handled above)
            if (ij && kl) return RuleClass::Symport2;
            return RuleClass::Antiport1;  // il|jk
        case 1:
            if (ij) return RuleClass::Separation;
            if (kl) return RuleClass::Joining;
            if (ik || jl) return RuleClass::PresenceMove;
            return RuleClass::Chain;  // il or jk
        case 0:
            return RuleClass::ParallelShift;
        default:
            return RuleClass::NoOp;
    }
}

}  // namespace psys
