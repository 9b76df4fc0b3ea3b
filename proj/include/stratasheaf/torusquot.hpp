#pragma once

// Finite subgroups of GL(k, Z) acting on the torus via the weights matrix:
// group closure, symplecticity, torsion fixed loci via Smith normal form,
// orbits, stabilizers, and resolvability verdicts. Torus points are kept
// additively in (Q/Z)^k; the exponential map is never evaluated.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratasheaf/exactmath.hpp"

namespace stratasheaf {

struct GroupNotFiniteError : std::runtime_error {
    explicit GroupNotFiniteError(std::size_t cap)
        : std::runtime_error("group closure exceeded cap " +
                             std::to_string(cap)),
          cap(cap) {}
    std::size_t cap;
};

struct TorusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MatrixGroup {
    std::size_t rank = 0;
    std::vector<IntMatrix> generators;
    std::vector<IntMatrix> elements;  // closed; deterministic BFS order

    std::size_t order() const { return elements.size(); }
};

constexpr std::size_t kDefaultGroupCap = 100000;

/// BFS closure of the generators (inverses included automatically since the
/// group is finite). Throws GroupNotFiniteError past the cap and TorusError
/// when a generator is not invertible over Z.
MatrixGroup close_group(std::size_t rank,
                        const std::vector<IntMatrix>& generators,
                        std::size_t cap = kDefaultGroupCap);

/// A^T J A = J for the standard symplectic block form. Throws on odd rank.
bool is_symplectic(const IntMatrix& g);

/// Point of (Q/Z)^k, every coordinate reduced into [0, 1).
struct TorsionPoint {
    RatVector coords;

    bool operator==(const TorsionPoint&) const = default;
    auto operator<=>(const TorsionPoint&) const = default;
};

TorsionPoint reduce_mod_1(const RatVector& coords);
TorsionPoint apply_mod_1(const IntMatrix& g, const TorsionPoint& p);

/// Solution set of (g - I) x = 0 in (Q/Z)^k: finitely many torsion
/// representatives, translated by the subtorus spanned by subtorus_basis.
struct FixedLocus {
    std::vector<TorsionPoint> torsion_reps;  // sorted
    std::vector<IntVector> subtorus_basis;
};

FixedLocus fixed_locus(const IntMatrix& g);

enum class ResolvabilityKind { Resolvable, Nonresolvable, Inconclusive };

struct ResolvabilityVerdict {
    ResolvabilityKind kind = ResolvabilityKind::Inconclusive;
    std::string local_type;  // e.g. "A1", "wreath(S2,C3)"; empty otherwise

    bool operator==(const ResolvabilityVerdict&) const = default;
};

std::string to_string(const ResolvabilityVerdict& v);

/// Stabilizer must be nontrivial. Nonresolvable when the subgroup generated
/// by its symplectic reflections (rank(h - I) = 2) is proper; Resolvable
/// A_{m-1} for fixed-point-free cyclic groups of order m in {2,3,4,6} on a
/// rank-2 lattice; Resolvable with a wreath/diagonal tag on a fingerprint
/// match; otherwise Inconclusive.
ResolvabilityVerdict resolvability_verdict(const MatrixGroup& stabilizer);

struct OrbitReport {
    std::vector<TorsionPoint> orbit;  // sorted representatives
    MatrixGroup stabilizer;           // of orbit.front()
    ResolvabilityVerdict verdict;
};

struct SingularOrbitReport {
    std::vector<OrbitReport> orbits;
    // non-identity elements fixing a subtorus; when nonempty the orbit
    // analysis covers only the isolated fixed points and is flagged partial
    std::vector<IntMatrix> positive_dimensional;
    bool partial = false;
};

/// Isolated torsion points with nontrivial stabilizer, partitioned into
/// G-orbits with stabilizers and resolvability verdicts.
SingularOrbitReport singular_orbits(const MatrixGroup& g);

/// The weights matrix of the order-m rotation, m in {1,2,3,4,6}.
IntMatrix gamma_generator(unsigned m);

/// Left quaternion multiplication by i, j, (1+i+j+k)/2 on the Hurwitz
/// lattice basis {1, i, j, (1+i+j+k)/2}; closure has order 24.
MatrixGroup binary_tetrahedral_model(std::size_t cap = kDefaultGroupCap);

/// Diagonal S3 on two copies of the A2 weight lattice (rank 4): the
/// 3-cycle fixes nine isolated points, of which only the origin is also
/// fixed by a reflection.
MatrixGroup pgl3_model(std::size_t cap = kDefaultGroupCap);

}  // namespace stratasheaf
