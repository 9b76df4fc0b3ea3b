#pragma once

// Global-section engine: enumerate/count monodromy-invariant,
// arrow-compatible assignments of stalk elements, and decide ample-section
// feasibility per section (projectivity verdicts).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stratasheaf/stratspace.hpp"

namespace stratasheaf {

/// One stalk element per stratum; invariant under monodromy and compatible
/// with every arrow's generalization map.
struct Section {
    std::map<StratumId, std::size_t> assignment;

    bool operator==(const Section&) const = default;
    auto operator<=>(const Section&) const = default;
};

/// One Picard-space vector per chamber-stalk stratum, strictly interior to
/// the assigned chamber and the ambient cone, compatible with every linear
/// restriction map and fixed by every monodromy matrix.
struct AmpleWitness {
    std::map<StratumId, RatVector> vectors;
};

enum class Verdict {
    GloballyProjective,
    AmpleSectionExists_GerbeUnchecked,
    NoAmpleSection,
    NotApplicable_ExplicitStalks,
};

std::string to_string(Verdict v);

/// All sections, in deterministic (lexicographic-by-stratum-id) order.
std::vector<Section> global_sections(const StratifiedModel& m);

/// Exact section count; factorizes over connected constraint components so
/// it stays cheap on models whose section lists are astronomically large.
Int count_sections(const StratifiedModel& m);

/// Re-check the Section invariants from scratch (used as an independent
/// soundness gate on enumeration output).
bool is_section(const StratifiedModel& m, const Section& s);

/// Ample-section LP for one section. Returns a witness or nothing; throws
/// NotApplicableError when some stratum carries a non-singleton explicit
/// stalk (those have no projectivity layer).
struct NotApplicableError : ModelError {
    using ModelError::ModelError;
};
std::optional<AmpleWitness> ample_section(const StratifiedModel& m,
                                          const Section& s);

/// Exact substitution re-check of an AmpleWitness, independent of the LP.
bool verify_ample_witness(const StratifiedModel& m, const Section& s,
                          const AmpleWitness& w);

Verdict projectivity_verdict(const StratifiedModel& m, const Section& s);

struct SectionVerdict {
    Section section;
    Verdict verdict;
    std::optional<AmpleWitness> witness;
};

struct VerdictReport {
    Int section_count;
    bool sections_listed = false;  // false when count exceeded max_list
    std::vector<SectionVerdict> entries;
};

/// Count, and when the count is at most max_list also enumerate each
/// section with its projectivity verdict and witness.
VerdictReport classify_model(const StratifiedModel& m,
                             std::size_t max_list = 10000);

}  // namespace stratasheaf
