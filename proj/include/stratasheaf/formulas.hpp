#pragma once

// Closed-form counts: ADE root-system data, the resolution-count formula
// prod_i ((n-1) h / (e_i + 1) + 1) for Sym^n of a du Val singularity, and
// derived surface/product counts.

#include <stdexcept>
#include <string>
#include <vector>

#include "stratasheaf/exactmath.hpp"

namespace stratasheaf {

struct FormulaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonIntegralCountError : FormulaError {
    using FormulaError::FormulaError;
};

struct DuValType {
    std::string label;  // "A3", "D5", "E6", ...
    unsigned coxeter_number = 0;
    std::vector<unsigned> exponents;

    bool operator==(const DuValType&) const = default;
    auto operator<=>(const DuValType&) const = default;
};

DuValType du_val_A(unsigned l);  // l >= 1
DuValType du_val_D(unsigned l);  // l >= 4
DuValType du_val_E(unsigned l);  // l in {6, 7, 8}
DuValType du_val(const std::string& label);

/// Multiset of du Val singular points of a surface.
struct SurfaceProfile {
    std::vector<DuValType> points;  // sorted by label for determinism
};

/// prod_i ((n-1) h / (e_i + 1) + 1), evaluated exactly in rationals;
/// throws NonIntegralCountError when the result is not an integer (which
/// would signal a corrupted ADE table).
Int bellamy_count(const DuValType& t, unsigned n);

/// Product of bellamy_count over the profile's points.
Int sym_duval_count(const SurfaceProfile& p, unsigned n);

/// Singular points of (C^x)^2 / <gamma_m> as du Val types, m in
/// {1,2,3,4,6}; computed from the torus orbit analysis (stabilizer C_d
/// orbits become A_{d-1} points).
SurfaceProfile torus_surface_profile(unsigned m);

/// The three displayed degree-6/7/8 counting polynomials for E6/E7/E8,
/// with hard-coded coefficients; used as an independent cross-check of
/// bellamy_count.
Int e_polynomial_check(const std::string& label, unsigned n);

}  // namespace stratasheaf
