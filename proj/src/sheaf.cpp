#include "stratasheaf/sheaf.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>

namespace stratasheaf {

namespace {

std::vector<std::size_t> sorted_by_depth(const StratifiedModel& m) {
    std::vector<std::size_t> order(m.strata.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& sa = m.strata[a];
        const auto& sb = m.strata[b];
        return std::tie(sa.dim, sa.id) < std::tie(sb.dim, sb.id);
    });
    return order;
}

std::vector<std::size_t> invariant_elements(const StratumData& s) {
    std::vector<Permutation> perms = monodromy_permutations(s);
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < s.stalk_size(); ++e) {
        bool fixed = true;
        for (const auto& p : perms)
            if (p[e] != e) {
                fixed = false;
                break;
            }
        if (fixed) out.push_back(e);
    }
    return out;
}

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

// Backtracking enumeration over a subset of strata: process by increasing
// (dim, id), so every arrow's source (strictly deeper) is assigned before
// its target; branch only where no incoming arrow determines the value.
void enumerate_subset(const StratifiedModel& m,
                      const std::vector<bool>& in_subset,
                      const std::function<void(const std::vector<std::size_t>&)>& emit) {
    std::vector<std::size_t> order;
    for (std::size_t i : sorted_by_depth(m))
        if (in_subset[i]) order.push_back(i);

    // incoming[i] = arrows within the subset targeting stratum i
    std::vector<std::vector<const HasseArrow*>> incoming(m.strata.size());
    for (const auto& a : m.arrows) {
        std::size_t src = m.stratum_index(a.source);
        std::size_t tgt = m.stratum_index(a.target);
        if (in_subset[src] && in_subset[tgt]) incoming[tgt].push_back(&a);
    }

    std::vector<std::vector<std::size_t>> branch_elems(m.strata.size());
    for (std::size_t i : order)
        if (incoming[i].empty())
            branch_elems[i] = invariant_elements(m.strata[i]);

    std::vector<std::size_t> assign(m.strata.size(), kUnassigned);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == order.size()) {
            emit(assign);
            return;
        }
        std::size_t i = order[pos];
        const StratumData& s = m.strata[i];
        if (incoming[i].empty()) {
            for (std::size_t e : branch_elems[i]) {
                assign[i] = e;
                rec(pos + 1);
            }
            assign[i] = kUnassigned;
            return;
        }
        std::size_t forced = kUnassigned;
        for (const auto* a : incoming[i]) {
            std::size_t src = m.stratum_index(a->source);
            assert(assign[src] != kUnassigned);
            std::size_t v = gen_eval(m, *a, assign[src]);
            if (forced == kUnassigned)
                forced = v;
            else if (forced != v)
                return;  // incompatible arrows meeting here
        }
        for (const auto& p : monodromy_permutations(s))
            if (p[forced] != forced) return;  // not monodromy-invariant
        assign[i] = forced;
        rec(pos + 1);
        assign[i] = kUnassigned;
    };
    rec(0);
}

std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::GloballyProjective: return "GloballyProjective";
        case Verdict::AmpleSectionExists_GerbeUnchecked:
            return "AmpleSectionExists_GerbeUnchecked";
        case Verdict::NoAmpleSection: return "NoAmpleSection";
        case Verdict::NotApplicable_ExplicitStalks:
            return "NotApplicable_ExplicitStalks";
    }
    return "Unknown";
}

std::vector<Section> global_sections(const StratifiedModel& m) {
    std::vector<Section> out;
    std::vector<bool> all(m.strata.size(), true);
    enumerate_subset(m, all, [&](const std::vector<std::size_t>& assign) {
        Section s;
        for (std::size_t i = 0; i < m.strata.size(); ++i)
            s.assignment[m.strata[i].id] = assign[i];
        out.push_back(std::move(s));
    });
    std::sort(out.begin(), out.end());
    return out;
}

Int count_sections(const StratifiedModel& m) {
    const std::size_t n = m.strata.size();
    // arrows into singleton stalks never constrain (the unique target
    // element is always hit), so they do not join constraint components
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& a : m.arrows) {
        std::size_t tgt = m.stratum_index(a.target);
        if (m.strata[tgt].stalk_size() <= 1) continue;
        std::size_t src = m.stratum_index(a.source);
        parent[uf_find(parent, src)] = uf_find(parent, tgt);
    }

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < n; ++i)
        components[uf_find(parent, i)].push_back(i);

    Int total(1);
    for (const auto& [root, members] : components) {
        if (members.size() == 1) {
            const StratumData& s = m.strata[members.front()];
            Int factor = s.monodromy.empty()
                             ? Int(static_cast<unsigned long>(s.stalk_size()))
                             : Int(static_cast<unsigned long>(
                                   invariant_elements(s).size()));
            total *= factor;
            continue;
        }
        std::vector<bool> subset(n, false);
        for (std::size_t i : members) subset[i] = true;
        Int factor(0);
        enumerate_subset(m, subset,
                         [&](const std::vector<std::size_t>&) { ++factor; });
        total *= factor;
    }
    return total;
}

bool is_section(const StratifiedModel& m, const Section& s) {
    if (s.assignment.size() != m.strata.size()) return false;
    for (const auto& st : m.strata) {
        auto it = s.assignment.find(st.id);
        if (it == s.assignment.end() || it->second >= st.stalk_size())
            return false;
        for (const auto& p : monodromy_permutations(st))
            if (p[it->second] != it->second) return false;
    }
    for (const auto& a : m.arrows)
        if (gen_eval(m, a, s.assignment.at(a.source)) !=
            s.assignment.at(a.target))
            return false;
    return true;
}

std::optional<AmpleWitness> ample_section(const StratifiedModel& m,
                                          const Section& s) {
    std::map<StratumId, std::size_t> offset;
    std::size_t total = 0;
    for (const auto& st : m.strata) {
        if (std::holds_alternative<ExplicitStalk>(st.stalk)) {
            if (st.stalk_size() > 1)
                throw NotApplicableError(
                    "stratum '" + st.id +
                    "' has a non-singleton explicit stalk (no projectivity "
                    "layer)");
            continue;
        }
        offset[st.id] = total;
        total += st.picard_dim();
    }

    LPProblem lp;
    lp.dimension = total;
    auto zero_row = [&] { return RatVector(total, Rat(0)); };

    for (const auto& a : m.arrows) {
        const auto* lin = std::get_if<LinearMap>(&a.gen);
        if (!lin) continue;
        const StratumData& src = m.stratum(a.source);
        const StratumData& tgt = m.stratum(a.target);
        std::size_t so = offset.at(src.id);
        for (std::size_t r = 0; r < tgt.picard_dim(); ++r) {
            RatVector row = zero_row();
            for (std::size_t j = 0; j < src.picard_dim(); ++j)
                row[so + j] += lin->matrix.at(r, j);
            row[offset.at(tgt.id) + r] -= 1;
            lp.equalities.emplace_back(std::move(row), Rat(0));
        }
    }
    for (const auto& st : m.strata) {
        if (!std::holds_alternative<ChamberStalk>(st.stalk)) continue;
        std::size_t o = offset.at(st.id);
        for (const auto& g : st.monodromy) {
            for (std::size_t r = 0; r < st.picard_dim(); ++r) {
                RatVector row = zero_row();
                for (std::size_t j = 0; j < st.picard_dim(); ++j)
                    row[o + j] += g.matrix->at(r, j);
                row[o + r] -= 1;
                lp.equalities.emplace_back(std::move(row), Rat(0));
            }
        }
        const auto& cs = std::get<ChamberStalk>(st.stalk);
        const Chamber& c = cs.chambers.chambers.at(s.assignment.at(st.id));
        for (std::size_t h = 0; h < cs.arrangement.hyperplanes.size(); ++h) {
            RatVector row = zero_row();
            for (std::size_t j = 0; j < st.picard_dim(); ++j)
                row[o + j] = Rat(cs.arrangement.hyperplanes[h].normal[j]) *
                             int(c.signs[h]);
            lp.strict_inequalities.push_back(std::move(row));
        }
        for (const auto& half : cs.arrangement.ambient.halfspaces) {
            RatVector row = zero_row();
            for (std::size_t j = 0; j < st.picard_dim(); ++j)
                row[o + j] = Rat(half[j]);
            lp.strict_inequalities.push_back(std::move(row));
        }
    }

    auto x = lp_strict_feasible(lp);
    if (!x) return std::nullopt;
    AmpleWitness w;
    for (const auto& [id, o] : offset) {
        std::size_t d = m.stratum(id).picard_dim();
        w.vectors[id] = RatVector(x->begin() + static_cast<long>(o),
                                  x->begin() + static_cast<long>(o + d));
    }
    return w;
}

bool verify_ample_witness(const StratifiedModel& m, const Section& s,
                          const AmpleWitness& w) {
    for (const auto& st : m.strata) {
        if (!std::holds_alternative<ChamberStalk>(st.stalk)) continue;
        auto it = w.vectors.find(st.id);
        if (it == w.vectors.end() || it->second.size() != st.picard_dim())
            return false;
        const RatVector& v = it->second;
        const auto& cs = std::get<ChamberStalk>(st.stalk);
        const Chamber& c = cs.chambers.chambers.at(s.assignment.at(st.id));
        for (std::size_t h = 0; h < cs.arrangement.hyperplanes.size(); ++h) {
            Rat d = dot(cs.arrangement.hyperplanes[h].normal, v);
            if (c.signs[h] > 0 ? d <= 0 : d >= 0) return false;
        }
        for (const auto& half : cs.arrangement.ambient.halfspaces)
            if (dot(half, v) <= 0) return false;
        for (const auto& g : st.monodromy)
            if (*g.matrix * v != v) return false;
    }
    for (const auto& a : m.arrows) {
        const auto* lin = std::get_if<LinearMap>(&a.gen);
        if (!lin) continue;
        const StratumData& tgt = m.stratum(a.target);
        if (tgt.picard_dim() == 0) continue;
        RatVector image = lin->matrix * w.vectors.at(a.source);
        if (image != w.vectors.at(a.target)) return false;
    }
    return true;
}

Verdict projectivity_verdict(const StratifiedModel& m, const Section& s) {
    std::optional<AmpleWitness> w;
    try {
        w = ample_section(m, s);
    } catch (const NotApplicableError&) {
        return Verdict::NotApplicable_ExplicitStalks;
    }
    if (!w) return Verdict::NoAmpleSection;
    if (m.flags.q_factorial_symplectic || m.flags.h2_units_trivial)
        return Verdict::GloballyProjective;
    return Verdict::AmpleSectionExists_GerbeUnchecked;
}

VerdictReport classify_model(const StratifiedModel& m, std::size_t max_list) {
    VerdictReport report;
    report.section_count = count_sections(m);
    if (report.section_count > Int(static_cast<unsigned long>(max_list)))
        return report;
    report.sections_listed = true;
    for (Section& s : global_sections(m)) {
        SectionVerdict entry;
        try {
            entry.witness = ample_section(m, s);
            entry.verdict =
                !entry.witness ? Verdict::NoAmpleSection
                : (m.flags.q_factorial_symplectic || m.flags.h2_units_trivial)
                    ? Verdict::GloballyProjective
                    : Verdict::AmpleSectionExists_GerbeUnchecked;
        } catch (const NotApplicableError&) {
            entry.verdict = Verdict::NotApplicable_ExplicitStalks;
        }
        entry.section = std::move(s);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace stratasheaf
