#ifndef PSYS_RANDOM_SYSTEMS_HPP
#define PSYS_RANDOM_SYSTEMS_HPP

#include <random>

#include "psys/model.hpp"

namespace psys {

// Seeded generators for property tests and harnesses. Every generated system
// passes validation.

struct RandomCellParams {
    int max_regions = 3;
    int max_objects = 6;  // alphabet size drawn from 1..max_objects
    int max_rules = 5;    // rule count drawn from 0..max_rules
    Count max_initial_count = 3;  // per object per region
    Count max_rule_side = 2;      // objects per rule side
};

CellPSystem random_cell_system(std::mt19937_64& rng, const RandomCellParams& p = {});

struct RandomTissueParams {
    int max_cells = 3;
    int max_objects = 6;
    int max_rules = 5;
    Count max_initial_count = 3;
    Count max_rule_side = 2;
};

TissuePSystem random_tissue_system(std::mt19937_64& rng, const RandomTissueParams& p = {});

/// One membrane, alphabet of 1..4 objects, 0..5 minimal rules (symport of
/// one or two objects, or one-for-one antiport), initial size 0..4, random E.
CellPSystem random_minimal_one_region(std::mt19937_64& rng);

}  // namespace psys

#endif  // PSYS_RANDOM_SYSTEMS_HPP
