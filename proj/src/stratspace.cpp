#include "stratasheaf/stratspace.hpp"

#include <algorithm>
#include <set>

namespace stratasheaf {

namespace {

bool is_permutation(const Permutation& p, std::size_t n) {
    if (p.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto v : p) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation effective_perm(const StratumData& s, const MonodromyGenerator& g) {
    if (const auto* cs = std::get_if<ChamberStalk>(&s.stalk)) {
        if (g.matrix) return induced_chamber_permutation(cs->chambers, *g.matrix);
        if (g.permutation) return *g.permutation;
        throw ModelError("monodromy generator on stratum '" + s.id +
                         "' has neither matrix nor permutation");
    }
    if (!g.permutation)
        throw ModelError("monodromy generator on explicit stalk of '" + s.id +
                         "' has no permutation");
    return *g.permutation;
}

std::string arrow_location(const HasseArrow& a) {
    std::string loc = "arrow " + a.source + "->" + a.target;
    if (!a.tag.empty()) loc += " [" + a.tag + "]";
    return loc;
}

RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return out;
}

std::size_t eval_gen_on_stalks(const Stalk& src, const Stalk& tgt,
                               const GenMap& gen, std::size_t elem) {
    if (elem >= stalk_size(src)) throw ModelError("gen_eval: element out of range");
    if (const auto* table = std::get_if<ExplicitMap>(&gen)) {
        if (elem >= table->table.size() ||
            table->table[elem] >= stalk_size(tgt))
            throw ModelError("gen_eval: table out of range");
        return table->table[elem];
    }
    const auto& lin = std::get<LinearMap>(gen);
    const auto* src_ch = std::get_if<ChamberStalk>(&src);
    if (!src_ch)
        throw ModelError("gen_eval: linear map on explicit-stalk source");
    RatVector q = lin.matrix * src_ch->chambers.chambers[elem].witness;
    if (const auto* tgt_ch = std::get_if<ChamberStalk>(&tgt)) {
        try {
            return tgt_ch->chambers.index_of(
                locate_chamber(tgt_ch->arrangement, q).signs);
        } catch (const ArrangementError& e) {
            throw NonGenericRestrictionError(e.what());
        }
    }
    if (stalk_size(tgt) != 1)
        throw ModelError(
            "gen_eval: linear map into a non-singleton explicit stalk");
    return 0;
}

}  // namespace

ChamberStalk make_chamber_stalk(Arrangement arrangement) {
    ChamberSet cs = enumerate_chambers(arrangement);
    return ChamberStalk{std::move(arrangement), std::move(cs)};
}

std::size_t stalk_size(const Stalk& s) {
    if (const auto* e = std::get_if<ExplicitStalk>(&s)) return e->labels.size();
    return std::get<ChamberStalk>(s).chambers.chambers.size();
}

std::string stalk_label(const Stalk& s, std::size_t element) {
    if (const auto* e = std::get_if<ExplicitStalk>(&s))
        return e->labels.at(element);
    return signs_to_string(
        std::get<ChamberStalk>(s).chambers.chambers.at(element).signs);
}

std::size_t StratumData::picard_dim() const {
    if (const auto* c = std::get_if<ChamberStalk>(&stalk))
        return c->arrangement.dimension;
    return 0;
}

const StratumData& StratifiedModel::stratum(const StratumId& id) const {
    return strata[stratum_index(id)];
}

std::size_t StratifiedModel::stratum_index(const StratumId& id) const {
    for (std::size_t i = 0; i < strata.size(); ++i)
        if (strata[i].id == id) return i;
    throw ModelError("unknown stratum '" + id + "'");
}

bool StratifiedModel::has_stratum(const StratumId& id) const {
    for (const auto& s : strata)
        if (s.id == id) return true;
    return false;
}

std::string to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::DuplicateId: return "DuplicateId";
        case ViolationCode::UnknownStratum: return "UnknownStratum";
        case ViolationCode::DimOrder: return "DimOrder";
        case ViolationCode::BadPermutation: return "BadPermutation";
        case ViolationCode::MissingMatrix: return "MissingMatrix";
        case ViolationCode::MatrixOnExplicitStalk: return "MatrixOnExplicitStalk";
        case ViolationCode::BadMatrixShape: return "BadMatrixShape";
        case ViolationCode::NotArrangementSymmetry: return "NotArrangementSymmetry";
        case ViolationCode::PermMatrixMismatch: return "PermMatrixMismatch";
        case ViolationCode::BadTable: return "BadTable";
        case ViolationCode::NonGenericRestriction: return "NonGenericRestriction";
    }
    return "Unknown";
}

ValidationReport validate(const StratifiedModel& m) {
    ValidationReport report;
    auto add = [&](ViolationCode code, std::string loc, std::string msg) {
        report.violations.push_back(
            Violation{code, std::move(loc), std::move(msg)});
    };

    std::set<StratumId> ids;
    for (const auto& s : m.strata)
        if (!ids.insert(s.id).second)
            add(ViolationCode::DuplicateId, s.id, "stratum id appears twice");

    for (const auto& s : m.strata) {
        const std::size_t n = s.stalk_size();
        for (std::size_t gi = 0; gi < s.monodromy.size(); ++gi) {
            const auto& g = s.monodromy[gi];
            std::string loc = s.id + " monodromy[" + std::to_string(gi) + "]";
            if (g.permutation && !is_permutation(*g.permutation, n)) {
                add(ViolationCode::BadPermutation, loc,
                    "declared permutation is not a bijection of the stalk");
                continue;
            }
            if (std::holds_alternative<ExplicitStalk>(s.stalk)) {
                if (g.matrix)
                    add(ViolationCode::MatrixOnExplicitStalk, loc,
                        "matrix generator on an explicit stalk");
                if (!g.permutation)
                    add(ViolationCode::BadPermutation, loc,
                        "explicit stalk generator needs a permutation");
                continue;
            }
            const auto& cs = std::get<ChamberStalk>(s.stalk);
            if (!g.matrix) {
                add(ViolationCode::MissingMatrix, loc,
                    "chamber stalk generator needs a Picard matrix");
                continue;
            }
            if (!g.matrix->is_square() ||
                g.matrix->rows() != cs.arrangement.dimension) {
                add(ViolationCode::BadMatrixShape, loc,
                    "matrix does not act on the Picard space");
                continue;
            }
            Permutation induced;
            try {
                induced = induced_chamber_permutation(cs.chambers, *g.matrix);
            } catch (const NotArrangementSymmetryError& e) {
                add(ViolationCode::NotArrangementSymmetry, loc, e.what());
                continue;
            }
            if (g.permutation && *g.permutation != induced)
                add(ViolationCode::PermMatrixMismatch, loc,
                    "declared stalk permutation differs from the one induced "
                    "by the matrix");
        }
    }

    for (const auto& a : m.arrows) {
        std::string loc = arrow_location(a);
        if (!m.has_stratum(a.source) || !m.has_stratum(a.target)) {
            add(ViolationCode::UnknownStratum, loc,
                "arrow endpoint is not a stratum");
            continue;
        }
        const auto& src = m.stratum(a.source);
        const auto& tgt = m.stratum(a.target);
        if (src.dim >= tgt.dim)
            add(ViolationCode::DimOrder, loc,
                "arrow must go from a deeper stratum to a shallower one");

        if (const auto* table = std::get_if<ExplicitMap>(&a.gen)) {
            if (table->table.size() != src.stalk_size()) {
                add(ViolationCode::BadTable, loc,
                    "table is not total on the source stalk");
                continue;
            }
            for (auto v : table->table)
                if (v >= tgt.stalk_size()) {
                    add(ViolationCode::BadTable, loc,
                        "table value outside the target stalk");
                    break;
                }
            continue;
        }
        const auto& lin = std::get<LinearMap>(a.gen);
        if (lin.matrix.cols() != src.picard_dim() ||
            lin.matrix.rows() != tgt.picard_dim()) {
            add(ViolationCode::BadMatrixShape, loc,
                "linear map shape does not match the Picard spaces");
            continue;
        }
        if (!std::holds_alternative<ChamberStalk>(src.stalk)) {
            add(ViolationCode::BadMatrixShape, loc,
                "linear map on an explicit-stalk source");
            continue;
        }
        if (std::holds_alternative<ExplicitStalk>(tgt.stalk) &&
            tgt.stalk_size() != 1) {
            add(ViolationCode::BadTable, loc,
                "linear map into a non-singleton explicit stalk");
            continue;
        }
        for (std::size_t e = 0; e < src.stalk_size(); ++e) {
            try {
                gen_eval(m, a, e);
            } catch (const NonGenericRestrictionError& err) {
                add(ViolationCode::NonGenericRestriction, loc, err.what());
                break;
            }
        }
    }
    return report;
}

std::vector<Permutation> monodromy_permutations(const StratumData& s) {
    std::vector<Permutation> out;
    out.reserve(s.monodromy.size());
    for (const auto& g : s.monodromy) out.push_back(effective_perm(s, g));
    return out;
}

std::size_t gen_eval(const StratifiedModel& m, const HasseArrow& arrow,
                     std::size_t element) {
    return eval_gen_on_stalks(m.stratum(arrow.source).stalk,
                              m.stratum(arrow.target).stalk, arrow.gen,
                              element);
}

namespace {

struct ProductStalk {
    Stalk stalk;
    std::size_t size1 = 0, size2 = 0;
    // chamber products need witness-based translation between chamber
    // indices and factor pairs; explicit products use i * size2 + j
    std::vector<std::size_t> pair_to_elem;            // [i * size2 + j]
    std::vector<std::pair<std::size_t, std::size_t>> elem_to_pair;
};

ProductStalk make_product_stalk(const Stalk& s1, const Stalk& s2) {
    ProductStalk out;
    out.size1 = stalk_size(s1);
    out.size2 = stalk_size(s2);

    const auto* c1 = std::get_if<ChamberStalk>(&s1);
    const auto* c2 = std::get_if<ChamberStalk>(&s2);
    if (c1 && c2) {
        const std::size_t d1 = c1->arrangement.dimension;
        const std::size_t d2 = c2->arrangement.dimension;
        auto embed = [&](const IntVector& v, bool left) {
            RatVector out_v(d1 + d2, Rat(0));
            for (std::size_t i = 0; i < v.size(); ++i)
                out_v[left ? i : d1 + i] = Rat(v[i]);
            return out_v;
        };
        std::vector<RatVector> normals, cone;
        for (const auto& h : c1->arrangement.hyperplanes)
            normals.push_back(embed(h.normal, true));
        for (const auto& h : c2->arrangement.hyperplanes)
            normals.push_back(embed(h.normal, false));
        for (const auto& h : c1->arrangement.ambient.halfspaces)
            cone.push_back(embed(h, true));
        for (const auto& h : c2->arrangement.ambient.halfspaces)
            cone.push_back(embed(h, false));
        ChamberStalk product =
            make_chamber_stalk(normalize(d1 + d2, normals, cone));

        out.pair_to_elem.assign(out.size1 * out.size2, 0);
        out.elem_to_pair.assign(out.size1 * out.size2, {0, 0});
        for (std::size_t i = 0; i < out.size1; ++i)
            for (std::size_t j = 0; j < out.size2; ++j) {
                RatVector w = c1->chambers.chambers[i].witness;
                const RatVector& w2 = c2->chambers.chambers[j].witness;
                w.insert(w.end(), w2.begin(), w2.end());
                std::size_t e = product.chambers.index_of(
                    locate_chamber(product.arrangement, w).signs);
                out.pair_to_elem[i * out.size2 + j] = e;
                out.elem_to_pair[e] = {i, j};
            }
        out.stalk = std::move(product);
        return out;
    }

    ExplicitStalk prod;
    prod.labels.reserve(out.size1 * out.size2);
    for (std::size_t i = 0; i < out.size1; ++i)
        for (std::size_t j = 0; j < out.size2; ++j)
            prod.labels.push_back(stalk_label(s1, i) + "|" + stalk_label(s2, j));
    out.pair_to_elem.resize(out.size1 * out.size2);
    out.elem_to_pair.resize(out.size1 * out.size2);
    for (std::size_t i = 0; i < out.size1; ++i)
        for (std::size_t j = 0; j < out.size2; ++j) {
            out.pair_to_elem[i * out.size2 + j] = i * out.size2 + j;
            out.elem_to_pair[i * out.size2 + j] = {i, j};
        }
    out.stalk = std::move(prod);
    return out;
}

StratumId pair_id(const StratumId& a, const StratumId& b) {
    return "(" + a + "," + b + ")";
}

}  // namespace

std::size_t product_element_index(const Stalk& product, const Stalk& s1,
                                  const Stalk& s2, std::size_t i,
                                  std::size_t j) {
    const auto* pc = std::get_if<ChamberStalk>(&product);
    if (!pc) return i * stalk_size(s2) + j;
    const auto& c1 = std::get<ChamberStalk>(s1);
    const auto& c2 = std::get<ChamberStalk>(s2);
    RatVector w = c1.chambers.chambers.at(i).witness;
    const RatVector& w2 = c2.chambers.chambers.at(j).witness;
    w.insert(w.end(), w2.begin(), w2.end());
    return pc->chambers.index_of(locate_chamber(pc->arrangement, w).signs);
}

StratifiedModel product_model(const StratifiedModel& m1,
                              const StratifiedModel& m2) {
    for (const auto* m : {&m1, &m2}) {
        ValidationReport r = validate(*m);
        if (!r.ok())
            throw ModelError("product_model: factor '" + m->metadata.name +
                             "' fails validation: " +
                             r.violations.front().message);
    }

    StratifiedModel out;
    out.flags.q_factorial_symplectic =
        m1.flags.q_factorial_symplectic && m2.flags.q_factorial_symplectic;
    out.flags.h2_units_trivial =
        m1.flags.h2_units_trivial && m2.flags.h2_units_trivial;
    out.metadata.name = pair_id(m1.metadata.name, m2.metadata.name);

    std::map<std::pair<StratumId, StratumId>, ProductStalk> stalks;
    for (const auto& s1 : m1.strata)
        for (const auto& s2 : m2.strata) {
            ProductStalk ps = make_product_stalk(s1.stalk, s2.stalk);

            StratumData s;
            s.id = pair_id(s1.id, s2.id);
            s.dim = s1.dim + s2.dim;
            s.stalk = ps.stalk;

            bool chamber_product =
                std::holds_alternative<ChamberStalk>(ps.stalk);
            auto lift = [&](const StratumData& factor,
                            const MonodromyGenerator& g, bool left) {
                MonodromyGenerator lifted;
                if (chamber_product) {
                    const auto& other = left ? s2 : s1;
                    RatMatrix eye = RatMatrix::identity(other.picard_dim());
                    lifted.matrix = left ? block_diag(*g.matrix, eye)
                                         : block_diag(eye, *g.matrix);
                } else {
                    Permutation p = effective_perm(factor, g);
                    Permutation lifted_p(ps.size1 * ps.size2);
                    for (std::size_t i = 0; i < ps.size1; ++i)
                        for (std::size_t j = 0; j < ps.size2; ++j) {
                            std::size_t from = ps.pair_to_elem[i * ps.size2 + j];
                            std::size_t to =
                                left ? ps.pair_to_elem[p[i] * ps.size2 + j]
                                     : ps.pair_to_elem[i * ps.size2 + p[j]];
                            lifted_p[from] = to;
                        }
                    lifted.permutation = std::move(lifted_p);
                }
                return lifted;
            };
            for (const auto& g : s1.monodromy)
                s.monodromy.push_back(lift(s1, g, true));
            for (const auto& g : s2.monodromy)
                s.monodromy.push_back(lift(s2, g, false));

            out.strata.push_back(std::move(s));
            stalks.emplace(std::make_pair(s1.id, s2.id), std::move(ps));
        }

    auto lift_arrow = [&](const HasseArrow& a, const StratumId& other,
                          bool left, const StratifiedModel& factor_model) {
        HasseArrow arrow;
        arrow.source = left ? pair_id(a.source, other) : pair_id(other, a.source);
        arrow.target = left ? pair_id(a.target, other) : pair_id(other, a.target);
        arrow.tag = a.tag;

        const auto& src_ps = stalks.at(left ? std::make_pair(a.source, other)
                                            : std::make_pair(other, a.source));
        const auto& tgt_ps = stalks.at(left ? std::make_pair(a.target, other)
                                            : std::make_pair(other, a.target));
        const StratumData& fsrc = factor_model.stratum(a.source);
        const StratumData& ftgt = factor_model.stratum(a.target);
        const StratifiedModel& other_model = left ? m2 : m1;
        const StratumData& os = other_model.stratum(other);

        bool both_chamber = std::holds_alternative<ChamberStalk>(src_ps.stalk) &&
                            std::holds_alternative<ChamberStalk>(tgt_ps.stalk);
        if (both_chamber && std::holds_alternative<LinearMap>(a.gen)) {
            RatMatrix eye = RatMatrix::identity(os.picard_dim());
            const RatMatrix& l = std::get<LinearMap>(a.gen).matrix;
            arrow.gen = LinearMap{left ? block_diag(l, eye)
                                       : block_diag(eye, l)};
            return arrow;
        }
        ExplicitMap table;
        table.table.resize(src_ps.size1 * src_ps.size2);
        for (std::size_t e = 0; e < table.table.size(); ++e) {
            auto [i, j] = src_ps.elem_to_pair[e];
            std::size_t fi = left ? i : j;
            std::size_t oi = left ? j : i;
            std::size_t mapped =
                eval_gen_on_stalks(fsrc.stalk, ftgt.stalk, a.gen, fi);
            std::size_t to = left ? tgt_ps.pair_to_elem[mapped * tgt_ps.size2 + oi]
                                  : tgt_ps.pair_to_elem[oi * tgt_ps.size2 + mapped];
            table.table[e] = to;
        }
        arrow.gen = std::move(table);
        return arrow;
    };

    for (const auto& a : m1.arrows)
        for (const auto& s2 : m2.strata)
            out.arrows.push_back(lift_arrow(a, s2.id, true, m1));
    for (const auto& a : m2.arrows)
        for (const auto& s1 : m1.strata)
            out.arrows.push_back(lift_arrow(a, s1.id, false, m2));

    return out;
}

}  // namespace stratasheaf
