#include "stratasheaf/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace stratasheaf {

namespace {

// Clear denominators and divide by the gcd; orientation is preserved.
IntVector primitive_vector(const RatVector& raw) {
    Int lcm(1);
    for (const auto& q : raw)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    IntVector v(raw.size());
    Int g(0);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        v[i] = raw[i].get_num() * (lcm / raw[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
    }
    if (g == 0) throw ArrangementError("zero normal vector");
    for (auto& e : v) e /= g;
    return v;
}

RatVector to_rat(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& e : v) out.emplace_back(e);
    return out;
}

LPProblem signed_region_lp(const Arrangement& a, const SignVector& signs) {
    LPProblem lp;
    lp.dimension = a.dimension;
    for (const auto& h : a.ambient.halfspaces)
        lp.strict_inequalities.push_back(to_rat(h));
    for (std::size_t i = 0; i < signs.size(); ++i) {
        RatVector row = to_rat(a.hyperplanes[i].normal);
        if (signs[i] < 0)
            for (auto& e : row) e = -e;
        lp.strict_inequalities.push_back(std::move(row));
    }
    return lp;
}

std::optional<RatVector> ambient_interior_point(const Arrangement& a) {
    return lp_strict_feasible(signed_region_lp(a, {}));
}

}  // namespace

Hyperplane Hyperplane::from_raw(const RatVector& raw) {
    IntVector v = primitive_vector(raw);
    for (const auto& e : v) {
        if (e == 0) continue;
        if (e < 0)
            for (auto& x : v) x = -x;
        break;
    }
    return Hyperplane{std::move(v)};
}

std::size_t ChamberSet::index_of(const SignVector& signs) const {
    auto it = std::lower_bound(
        chambers.begin(), chambers.end(), signs,
        [](const Chamber& c, const SignVector& s) { return c.signs < s; });
    if (it == chambers.end() || it->signs != signs)
        throw ArrangementError("sign vector is not a chamber: " +
                               signs_to_string(signs));
    return static_cast<std::size_t>(it - chambers.begin());
}

Arrangement normalize(std::size_t dimension,
                      const std::vector<RatVector>& raw_normals,
                      const std::vector<RatVector>& raw_cone) {
    Arrangement a;
    a.dimension = dimension;

    std::set<IntVector> cone_seen;
    for (const auto& raw : raw_cone) {
        if (raw.size() != dimension)
            throw ArrangementError("cone normal has wrong length");
        IntVector v = primitive_vector(raw);
        if (cone_seen.insert(v).second) a.ambient.halfspaces.push_back(v);
    }
    std::sort(a.ambient.halfspaces.begin(), a.ambient.halfspaces.end());

    std::set<Hyperplane> seen;
    for (const auto& raw : raw_normals) {
        if (raw.size() != dimension)
            throw ArrangementError("hyperplane normal has wrong length");
        Hyperplane h = Hyperplane::from_raw(raw);
        if (seen.insert(h).second) a.hyperplanes.push_back(std::move(h));
    }
    std::sort(a.hyperplanes.begin(), a.hyperplanes.end());

    // drop hyperplanes that do not cut the ambient interior (both open
    // sides must meet it); skipped when the interior is already empty
    if (!a.hyperplanes.empty() && ambient_interior_point(a).has_value()) {
        std::vector<Hyperplane> cutting;
        for (const auto& h : a.hyperplanes) {
            Arrangement probe{dimension, {h}, a.ambient};
            bool plus = lp_strict_feasible(signed_region_lp(probe, {+1}))
                            .has_value();
            bool minus = lp_strict_feasible(signed_region_lp(probe, {-1}))
                             .has_value();
            if (plus && minus) cutting.push_back(h);
        }
        a.hyperplanes = std::move(cutting);
    }
    return a;
}

ChamberSet brute_force_chambers(const Arrangement& a) {
    const std::size_t m = a.hyperplanes.size();
    if (m > 24)
        throw ArrangementError("brute_force_chambers: too many hyperplanes");
    if (!ambient_interior_point(a).has_value())
        throw EmptyAmbientError("ambient cone has empty interior");

    ChamberSet cs;
    cs.arrangement = a;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        SignVector signs(m);
        for (std::size_t i = 0; i < m; ++i)
            signs[i] = (mask >> i) & 1 ? std::int8_t{+1} : std::int8_t{-1};
        auto w = lp_strict_feasible(signed_region_lp(a, signs));
        if (w) cs.chambers.push_back(Chamber{std::move(signs), std::move(*w)});
    }
    std::sort(cs.chambers.begin(), cs.chambers.end(),
              [](const Chamber& x, const Chamber& y) { return x.signs < y.signs; });
    return cs;
}

ChamberSet enumerate_chambers(const Arrangement& a) {
    const std::size_t m = a.hyperplanes.size();
    if (!ambient_interior_point(a).has_value())
        throw EmptyAmbientError("ambient cone has empty interior");

    // grow a seed sign vector one hyperplane at a time; the region so far
    // is open and nonempty, so at least one side is always feasible
    SignVector seed;
    for (std::size_t i = 0; i < m; ++i) {
        seed.push_back(+1);
        SignVector prefix = seed;
        Arrangement partial{a.dimension,
                            {a.hyperplanes.begin(),
                             a.hyperplanes.begin() + static_cast<long>(i + 1)},
                            a.ambient};
        if (!lp_strict_feasible(signed_region_lp(partial, prefix)))
            seed.back() = -1;
    }

    std::map<SignVector, RatVector> found;
    std::deque<SignVector> queue;
    auto seed_witness = lp_strict_feasible(signed_region_lp(a, seed));
    if (!seed_witness)
        throw ArrangementError("internal: seed chamber infeasible");
    found.emplace(seed, std::move(*seed_witness));
    queue.push_back(seed);

    while (!queue.empty()) {
        SignVector cur = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < m; ++i) {
            SignVector next = cur;
            next[i] = static_cast<std::int8_t>(-next[i]);
            if (found.count(next)) continue;
            auto w = lp_strict_feasible(signed_region_lp(a, next));
            if (w) {
                found.emplace(next, std::move(*w));
                queue.push_back(next);
            }
        }
    }

    ChamberSet cs;
    cs.arrangement = a;
    for (auto& [signs, witness] : found)
        cs.chambers.push_back(Chamber{signs, std::move(witness)});
    return cs;  // std::map iteration is already lexicographic
}

Chamber locate_chamber(const Arrangement& a, const RatVector& p) {
    if (p.size() != a.dimension)
        throw ArrangementError("locate_chamber: point has wrong length");
    for (const auto& h : a.ambient.halfspaces)
        if (dot(h, p) <= 0)
            throw OutsideAmbientError("point not interior to ambient cone");
    SignVector signs;
    signs.reserve(a.hyperplanes.size());
    for (const auto& h : a.hyperplanes) {
        Rat s = dot(h.normal, p);
        if (s == 0)
            throw OnWallError("point lies on a hyperplane");
        signs.push_back(s > 0 ? std::int8_t{+1} : std::int8_t{-1});
    }
    return Chamber{std::move(signs), p};
}

RatVector interior_point(const Chamber& c) { return c.witness; }

std::vector<std::size_t> induced_chamber_permutation(const ChamberSet& cs,
                                                     const RatMatrix& m) {
    const Arrangement& a = cs.arrangement;
    if (!m.is_square() || m.rows() != a.dimension)
        throw NotArrangementSymmetryError("matrix has wrong shape");
    auto inv = m.inverse();
    if (!inv)
        throw NotArrangementSymmetryError("matrix is singular");

    // hyperplane normals transform by the inverse transpose
    RatMatrix invt = inv->transposed();
    for (const auto& h : a.hyperplanes) {
        Hyperplane image = Hyperplane::from_raw(invt * to_rat(h.normal));
        if (!std::binary_search(a.hyperplanes.begin(), a.hyperplanes.end(),
                                image))
            throw NotArrangementSymmetryError(
                "matrix does not permute the arrangement");
    }

    std::vector<std::size_t> perm(cs.chambers.size());
    std::vector<bool> hit(cs.chambers.size(), false);
    for (std::size_t i = 0; i < cs.chambers.size(); ++i) {
        RatVector q = m * cs.chambers[i].witness;
        std::size_t j;
        try {
            j = cs.index_of(locate_chamber(a, q).signs);
        } catch (const ArrangementError&) {
            throw NotArrangementSymmetryError(
                "image of a chamber point is not interior to a chamber");
        }
        perm[i] = j;
        hit[j] = true;
    }
    for (bool b : hit)
        if (!b)
            throw NotArrangementSymmetryError(
                "induced chamber map is not a bijection");
    return perm;
}

std::string signs_to_string(const SignVector& s) {
    std::string out;
    out.reserve(s.size());
    for (auto v : s) out.push_back(v > 0 ? '+' : '-');
    return out;
}

}  // namespace stratasheaf
