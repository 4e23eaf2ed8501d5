#ifndef PSYS_DSL_HPP
#define PSYS_DSL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "psys/diagnostic.hpp"
#include "psys/model.hpp"

namespace psys {

// Directive-based system format (.psys):
//
//   @model cell | tissue | interaction
//   @objects a b c
//   @env a                      (may be empty)
//   @membranes 1(2 3(4))        (cell)    | @cells N   (tissue, interaction)
//   @init 2: a^2 b              (omitted regions start empty)
//   @rules 1: (a, out; b, in)   (cell, region label before ':')
//   @rules: (1, a / b, 0)       (tissue)
//   @rules: (a,1)(b,2) -> (a,0)(b,1)   (interaction; also (a,1) -> (a,2))
//   @output 2
//
// '#' starts a comment. Several rules may share one @rules line.
//
// Diagnostic codes: P001 unknown or misplaced directive, P002 malformed
// multiset, P003 undeclared object, P004 label error, P005 duplicate
// directive, P006 missing directive, P007 malformed rule, P008 zero
// multiplicity.

/// Syntax and reference errors become diagnostics. A system that parses may
/// still fail validate(); the parser does not apply model-level checks.
Parsed<AnySystem> parse_system(std::string_view text);

/// Canonical text: fixed directive order, sorted objects, rules sorted and
/// one per line. parse_system(print_system(s)) is structurally equal to s.
std::string print_system(const AnySystem& sys);

/// Line-oriented interaction rules (.irules): one rule per line.
Parsed<std::vector<MinimalRule>> parse_interactions(std::string_view text);

std::string print_interactions(const std::vector<MinimalRule>& rules);

}  // namespace psys

#endif  // PSYS_DSL_HPP
