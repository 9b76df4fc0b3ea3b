#pragma once

// Rational hyperplane arrangements inside cones: chamber enumeration by
// wall-crossing BFS (with a 2^m brute-force oracle), point location, and
// induced chamber permutations under linear symmetries.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratasheaf/exactmath.hpp"

namespace stratasheaf {

/// Primitive, sign-canonical integer normal (gcd 1, first nonzero positive).
struct Hyperplane {
    IntVector normal;

    static Hyperplane from_raw(const RatVector& raw);
    bool operator==(const Hyperplane&) const = default;
    auto operator<=>(const Hyperplane&) const = default;
};

/// Intersection of halfspaces <n, x> >= 0. Normals are primitive and keep
/// their orientation (unlike Hyperplane, the sign carries meaning here).
struct Cone {
    std::vector<IntVector> halfspaces;  // deduplicated, sorted
};

struct Arrangement {
    std::size_t dimension = 0;
    std::vector<Hyperplane> hyperplanes;  // deduplicated, canonical order
    Cone ambient;
};

using SignVector = std::vector<std::int8_t>;  // entries +1 / -1

struct Chamber {
    SignVector signs;
    RatVector witness;  // strictly interior exact rational point
};

struct ChamberSet {
    Arrangement arrangement;
    std::vector<Chamber> chambers;  // lexicographic sign-vector order

    std::size_t index_of(const SignVector& signs) const;  // throws if absent
};

struct ArrangementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyAmbientError : ArrangementError {
    using ArrangementError::ArrangementError;
};
struct OnWallError : ArrangementError {
    using ArrangementError::ArrangementError;
};
struct OutsideAmbientError : ArrangementError {
    using ArrangementError::ArrangementError;
};
struct NotArrangementSymmetryError : ArrangementError {
    using ArrangementError::ArrangementError;
};

/// Primitivize, sign-canonicalize, deduplicate. Hyperplanes that do not cut
/// the interior of the ambient cone are dropped. Throws on a zero normal.
Arrangement normalize(std::size_t dimension,
                      const std::vector<RatVector>& raw_normals,
                      const std::vector<RatVector>& raw_cone);

/// Wall-crossing BFS from a seed chamber. Throws EmptyAmbientError when the
/// ambient cone has no interior point.
ChamberSet enumerate_chambers(const Arrangement& a);

/// Independent oracle: test all 2^m sign vectors with lp_strict_feasible.
/// Requires at most 24 hyperplanes.
ChamberSet brute_force_chambers(const Arrangement& a);

/// Sign vector of p; throws OnWallError / OutsideAmbientError.
Chamber locate_chamber(const Arrangement& a, const RatVector& p);

RatVector interior_point(const Chamber& c);

/// Permutation on chamber indices sending C to locate(M * interior(C)).
/// Throws NotArrangementSymmetryError unless M is invertible, permutes the
/// hyperplanes, and maps every chamber into the ambient interior.
std::vector<std::size_t> induced_chamber_permutation(const ChamberSet& cs,
                                                     const RatMatrix& m);

std::string signs_to_string(const SignVector& s);

}  // namespace stratasheaf
