#pragma once

// Combinatorial model of a stratified space: stratum poset, Hasse arrows
// with generalization maps, per-stratum stalk data and monodromy.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stratasheaf/arrangement.hpp"
#include "stratasheaf/exactmath.hpp"

namespace stratasheaf {

using StratumId = std::string;
using Permutation = std::vector<std::size_t>;

struct ExplicitStalk {
    std::vector<std::string> labels;
};

struct ChamberStalk {
    Arrangement arrangement;
    ChamberSet chambers;  // element index = chamber index
};

/// Throws EmptyAmbientError when the arrangement has no chambers.
ChamberStalk make_chamber_stalk(Arrangement arrangement);

using Stalk = std::variant<ExplicitStalk, ChamberStalk>;

std::size_t stalk_size(const Stalk& s);
std::string stalk_label(const Stalk& s, std::size_t element);

/// A monodromy generator: a matrix acting on the Picard space (chamber
/// stalks; the stalk permutation is induced from it), or an explicit stalk
/// permutation (explicit stalks). A declared permutation alongside a matrix
/// is cross-checked during validation.
struct MonodromyGenerator {
    std::optional<RatMatrix> matrix;
    std::optional<Permutation> permutation;
};

struct StratumData {
    StratumId id;
    int dim = 0;
    Stalk stalk;
    std::vector<MonodromyGenerator> monodromy;
    std::string basepoint_note;

    std::size_t stalk_size() const { return stratasheaf::stalk_size(stalk); }
    std::size_t picard_dim() const;
};

struct ExplicitMap {
    std::vector<std::size_t> table;
};

struct LinearMap {
    RatMatrix matrix;  // Picard(source) -> Picard(target)
};

using GenMap = std::variant<ExplicitMap, LinearMap>;

struct HasseArrow {
    StratumId source;  // deeper stratum
    StratumId target;  // shallower stratum
    std::string tag;   // distinguishes parallel arrows
    GenMap gen;
};

struct ModelFlags {
    bool q_factorial_symplectic = false;
    bool h2_units_trivial = false;

    bool operator==(const ModelFlags&) const = default;
};

struct ModelMetadata {
    std::string name;
    std::string notes;
};

struct StratifiedModel {
    std::vector<StratumData> strata;
    std::vector<HasseArrow> arrows;
    ModelFlags flags;
    ModelMetadata metadata;

    const StratumData& stratum(const StratumId& id) const;
    std::size_t stratum_index(const StratumId& id) const;
    bool has_stratum(const StratumId& id) const;
};

enum class ViolationCode {
    DuplicateId,
    UnknownStratum,
    DimOrder,
    BadPermutation,
    MissingMatrix,
    MatrixOnExplicitStalk,
    BadMatrixShape,
    NotArrangementSymmetry,
    PermMatrixMismatch,
    BadTable,
    NonGenericRestriction,
};

std::string to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::string location;  // stratum id or "arrow src->tgt [tag]"
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonGenericRestrictionError : ModelError {
    using ModelError::ModelError;
};

/// Check every structural invariant; returns a report listing each
/// violation with the stratum/arrow it belongs to.
ValidationReport validate(const StratifiedModel& m);

/// Effective stalk permutations of a stratum's monodromy generators:
/// induced from the matrix on chamber stalks, declared on explicit stalks.
std::vector<Permutation> monodromy_permutations(const StratumData& s);

/// Evaluate an arrow's generalization map on a stalk element of its source.
/// Throws NonGenericRestrictionError when a linear map lands on a wall.
std::size_t gen_eval(const StratifiedModel& m, const HasseArrow& arrow,
                     std::size_t element);

/// Product of two validated models: strata are pairs (dims add), stalks are
/// Cartesian products (chamber stalks combine as product arrangements in
/// the direct-sum Picard space), arrows and monodromy act factorwise.
StratifiedModel product_model(const StratifiedModel& m1,
                              const StratifiedModel& m2);

/// Pair index helpers used by product_model and the tests: element order of
/// the product stalk of (s1, s2) as pairs (i, j) -> stalk element index.
std::size_t product_element_index(const Stalk& product, const Stalk& s1,
                                  const Stalk& s2, std::size_t i,
                                  std::size_t j);

}  // namespace stratasheaf
