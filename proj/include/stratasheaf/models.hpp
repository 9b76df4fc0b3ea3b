#pragma once

// Builders for the worked example models: the regression corpus and a
// demonstration of the modeling conventions.

#include "stratasheaf/stratspace.hpp"

namespace stratasheaf {

/// One singular stratum with a two-chamber stalk over {x = 0} whose
/// monodromy (-1) swaps the chambers, plus an open singleton stratum.
/// Passing false drops the monodromy generator (two sections instead of
/// none).
StratifiedModel monodromy_swap_model(bool with_monodromy = true);

/// Three minimal strata whose stalks are pairs (r_j, r_k), r in {1, 2},
/// three join strata with stalks {1, 2}, and the two coordinate-projection
/// arrows into each join: 8 of the 64 raw assignments survive.
StratifiedModel min_orbit_cube_model();

/// Four deepest-point strata, each carrying an n-chamber stalk (rays
/// y = k x, 0 < k < n, inside the quadrant x, y > 0), an exceptional-degree
/// map onto a shared one-dimensional diagonal stratum, and an open
/// singleton stratum; q_factorial_symplectic is set. Section count n^4.
StratifiedModel bn_wreath_model(unsigned n);

/// k >= 2 isolated singular strata, each with the two-chamber stalk over
/// {x = 0} (the two small resolutions), an open singleton stratum, and no
/// projectivity flags: every section has an ample witness but none is
/// certified globally projective.
StratifiedModel nodal_smallres_model(unsigned k = 2);

/// Essential model of Sym^n of the gamma_m torus quotient surface: one
/// minimal stratum per singular point of torus_surface_profile(m) with an
/// explicit stalk of size bellamy_count(type, n), all collapsing to a
/// singleton open stratum. m in {2, 3, 4, 6}, n >= 1.
StratifiedModel wreath_torus_model(unsigned m, unsigned n);

/// Builder registry used by the CLI (--builtin) and the golden-file tests.
struct BuilderEntry {
    std::string name;       // e.g. "bn-wreath"
    std::string params;     // human-readable parameter schema
    StratifiedModel (*build)(const std::vector<std::string>& args);
};

const std::vector<BuilderEntry>& builder_catalog();
StratifiedModel build_named_model(const std::string& spec);  // "name" or "name:a,b"

}  // namespace stratasheaf
