#include "stratasheaf/torusquot.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace stratasheaf {

namespace {

std::vector<Int> key_of(const IntMatrix& m) { return m.entries(); }

IntMatrix minus_identity(const IntMatrix& g) {
    IntMatrix a = g;
    for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, i) -= 1;
    return a;
}

std::size_t rank_of(const IntMatrix& a) { return rank(RatMatrix(a)); }

std::size_t element_order(const IntMatrix& g, std::size_t bound) {
    IntMatrix id = IntMatrix::identity(g.rows());
    IntMatrix p = g;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (p == id) return k;
        p = p * g;
    }
    throw TorusError("element order exceeds group order");
}

IntMatrix int_block_diag(const std::vector<IntMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    IntMatrix out(n, n);
    std::size_t o = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.at(o + i, o + j) = b.at(i, j);
        o += b.rows();
    }
    return out;
}

// permutation of m rank-2 blocks as a 2m x 2m matrix
IntMatrix block_swap(std::size_t m, std::size_t a, std::size_t b) {
    IntMatrix out(2 * m, 2 * m);
    for (std::size_t blk = 0; blk < m; ++blk) {
        std::size_t to = blk == a ? b : blk == b ? a : blk;
        out.at(2 * to, 2 * blk) = 1;
        out.at(2 * to + 1, 2 * blk + 1) = 1;
    }
    return out;
}

struct Fingerprint {
    std::size_t order;
    std::size_t rank;
    std::vector<Int> traces;  // sorted

    bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint_of(const MatrixGroup& g) {
    Fingerprint f;
    f.order = g.order();
    f.rank = g.rank;
    for (const auto& e : g.elements) {
        Int t(0);
        for (std::size_t i = 0; i < e.rows(); ++i) t += e.at(i, i);
        f.traces.push_back(t);
    }
    std::sort(f.traces.begin(), f.traces.end());
    return f;
}

IntMatrix symmetric_root_generator(std::size_t rank, std::size_t i) {
    // simple reflection s_i on the A_rank root lattice basis
    IntMatrix s = IntMatrix::identity(rank);
    s.at(i, i) = -1;
    if (i > 0) s.at(i - 1, i) = 1;
    if (i + 1 < rank) s.at(i + 1, i) = 1;
    return s.transposed();  // column convention: s(alpha_j) in column j
}

MatrixGroup diagonal_symmetric_group(std::size_t points) {
    // S_points acting diagonally on two copies of the A_{points-1} lattice
    std::size_t r = points - 1;
    std::vector<IntMatrix> gens;
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix s = symmetric_root_generator(r, i);
        gens.push_back(int_block_diag({s, s}));
    }
    return close_group(2 * r, gens);
}

MatrixGroup wreath_group(std::size_t m, unsigned l) {
    std::vector<IntMatrix> gens;
    std::vector<IntMatrix> blocks(m, IntMatrix::identity(2));
    blocks[0] = gamma_generator(l);
    gens.push_back(int_block_diag(blocks));
    for (std::size_t a = 0; a + 1 < m; ++a)
        gens.push_back(block_swap(m, a, a + 1));
    return close_group(2 * m, gens);
}

struct FingerprintEntry {
    Fingerprint fp;
    std::string tag;
};

const std::vector<FingerprintEntry>& fingerprint_table() {
    static const std::vector<FingerprintEntry> table = [] {
        std::vector<FingerprintEntry> t;
        for (std::size_t m : {2, 3})
            for (unsigned l : {1, 2, 3, 4, 6})
                t.push_back({fingerprint_of(wreath_group(m, l)),
                             "wreath(S" + std::to_string(m) + ",C" +
                                 std::to_string(l) + ")"});
        for (std::size_t pts : {3, 4})
            t.push_back({fingerprint_of(diagonal_symmetric_group(pts)),
                         "diagonal(S" + std::to_string(pts) + ")"});
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (t[i].fp == t[j].fp)
                    throw std::logic_error(
                        "resolvability fingerprint table entries '" +
                        t[i].tag + "' and '" + t[j].tag +
                        "' are indistinguishable");
        return t;
    }();
    return table;
}

}  // namespace

MatrixGroup close_group(std::size_t rank,
                        const std::vector<IntMatrix>& generators,
                        std::size_t cap) {
    for (const auto& g : generators) {
        if (!g.is_square() || g.rows() != rank)
            throw TorusError("generator has wrong shape");
        Int d = int_determinant(g);
        if (d != 1 && d != -1)
            throw TorusError("generator is not invertible over Z");
    }
    MatrixGroup out;
    out.rank = rank;
    out.generators = generators;

    std::set<std::vector<Int>> seen;
    std::deque<IntMatrix> queue;
    IntMatrix id = IntMatrix::identity(rank);
    seen.insert(key_of(id));
    out.elements.push_back(id);
    queue.push_back(id);
    while (!queue.empty()) {
        IntMatrix cur = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            IntMatrix next = cur * g;
            if (!seen.insert(key_of(next)).second) continue;
            if (out.elements.size() >= cap) throw GroupNotFiniteError(cap);
            out.elements.push_back(next);
            queue.push_back(next);
        }
    }
    return out;
}

bool is_symplectic(const IntMatrix& g) {
    if (!g.is_square() || g.rows() % 2 != 0)
        throw TorusError("is_symplectic needs an even-rank square matrix");
    std::size_t n = g.rows() / 2;
    IntMatrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j.at(i, n + i) = 1;
        j.at(n + i, i) = -1;
    }
    return g.transposed() * j * g == j;
}

TorsionPoint reduce_mod_1(const RatVector& coords) {
    TorsionPoint p;
    p.coords.reserve(coords.size());
    for (const auto& q : coords) {
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        p.coords.push_back(q - Rat(fl));
    }
    return p;
}

TorsionPoint apply_mod_1(const IntMatrix& g, const TorsionPoint& p) {
    if (g.cols() != p.coords.size())
        throw TorusError("apply_mod_1: shape mismatch");
    RatVector image(g.rows(), Rat(0));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            image[i] += Rat(g.at(i, j)) * p.coords[j];
    return reduce_mod_1(image);
}

FixedLocus fixed_locus(const IntMatrix& g) {
    if (!g.is_square()) throw TorusError("fixed_locus needs a square matrix");
    const std::size_t k = g.rows();
    SmithDecomposition snf = smith_normal_form(minus_identity(g));
    IntVector d = snf.diagonal();

    FixedLocus out;
    std::vector<std::size_t> torsion_pos, free_pos;
    for (std::size_t i = 0; i < k; ++i)
        (d[i] == 0 ? free_pos : torsion_pos).push_back(i);
    for (std::size_t i : free_pos) {
        IntVector dir(k);
        for (std::size_t r = 0; r < k; ++r) dir[r] = snf.v.at(r, i);
        out.subtorus_basis.push_back(std::move(dir));
    }

    // x = V y with d_i y_i integral: y_i ranges over {0,...,d_i-1}/d_i
    std::vector<Int> counter(torsion_pos.size(), Int(0));
    while (true) {
        RatVector x(k, Rat(0));
        for (std::size_t t = 0; t < torsion_pos.size(); ++t) {
            Rat y(counter[t], d[torsion_pos[t]]);
            y.canonicalize();
            for (std::size_t r = 0; r < k; ++r)
                x[r] += Rat(snf.v.at(r, torsion_pos[t])) * y;
        }
        out.torsion_reps.push_back(reduce_mod_1(x));
        std::size_t t = 0;
        for (; t < counter.size(); ++t) {
            counter[t] += 1;
            if (counter[t] < d[torsion_pos[t]]) break;
            counter[t] = 0;
        }
        if (t == counter.size()) break;
        if (counter.empty()) break;
    }
    std::sort(out.torsion_reps.begin(), out.torsion_reps.end());
    out.torsion_reps.erase(
        std::unique(out.torsion_reps.begin(), out.torsion_reps.end()),
        out.torsion_reps.end());
    return out;
}

std::string to_string(const ResolvabilityVerdict& v) {
    switch (v.kind) {
        case ResolvabilityKind::Resolvable:
            return "Resolvable(" + v.local_type + ")";
        case ResolvabilityKind::Nonresolvable: return "Nonresolvable";
        case ResolvabilityKind::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

ResolvabilityVerdict resolvability_verdict(const MatrixGroup& stabilizer) {
    if (stabilizer.order() <= 1)
        throw TorusError("resolvability_verdict needs a nontrivial group");
    const IntMatrix id = IntMatrix::identity(stabilizer.rank);

    std::vector<IntMatrix> reflections;
    for (const auto& h : stabilizer.elements)
        if (!(h == id) && rank_of(minus_identity(h)) == 2)
            reflections.push_back(h);
    std::size_t generated = reflections.empty()
                                ? 1
                                : close_group(stabilizer.rank, reflections,
                                              stabilizer.order() + 1)
                                      .order();
    if (generated < stabilizer.order())
        return {ResolvabilityKind::Nonresolvable, ""};

    if (stabilizer.rank == 2) {
        std::size_t n = stabilizer.order();
        bool cyclic = false;
        for (const auto& h : stabilizer.elements)
            if (element_order(h, n) == n) {
                cyclic = true;
                break;
            }
        bool fixed_point_free = true;
        for (const auto& h : stabilizer.elements)
            if (!(h == id) && rank_of(minus_identity(h)) != 2)
                fixed_point_free = false;
        if (cyclic && fixed_point_free &&
            (n == 2 || n == 3 || n == 4 || n == 6))
            return {ResolvabilityKind::Resolvable,
                    "A" + std::to_string(n - 1)};
    }

    Fingerprint fp = fingerprint_of(stabilizer);
    for (const auto& entry : fingerprint_table())
        if (entry.fp == fp)
            return {ResolvabilityKind::Resolvable, entry.tag};
    return {ResolvabilityKind::Inconclusive, ""};
}

SingularOrbitReport singular_orbits(const MatrixGroup& g) {
    SingularOrbitReport report;
    const IntMatrix id = IntMatrix::identity(g.rank);

    std::set<TorsionPoint> points;
    for (const auto& h : g.elements) {
        if (h == id) continue;
        if (int_determinant(minus_identity(h)) == 0) {
            report.positive_dimensional.push_back(h);
            continue;
        }
        for (auto& p : fixed_locus(h).torsion_reps) points.insert(p);
    }
    report.partial = !report.positive_dimensional.empty();

    std::set<TorsionPoint> done;
    for (const auto& p : points) {
        if (done.count(p)) continue;
        std::set<TorsionPoint> orbit;
        std::deque<TorsionPoint> queue{p};
        orbit.insert(p);
        while (!queue.empty()) {
            TorsionPoint cur = queue.front();
            queue.pop_front();
            for (const auto& h : g.elements) {
                TorsionPoint img = apply_mod_1(h, cur);
                if (orbit.insert(img).second) queue.push_back(img);
            }
        }
        OrbitReport rep;
        rep.orbit.assign(orbit.begin(), orbit.end());
        for (const auto& q : rep.orbit) done.insert(q);

        const TorsionPoint& base = rep.orbit.front();
        rep.stabilizer.rank = g.rank;
        for (const auto& h : g.elements)
            if (apply_mod_1(h, base) == base)
                rep.stabilizer.elements.push_back(h);
        rep.stabilizer.generators = rep.stabilizer.elements;
        if (rep.stabilizer.order() > 1)
            rep.verdict = resolvability_verdict(rep.stabilizer);
        report.orbits.push_back(std::move(rep));
    }
    return report;
}

IntMatrix gamma_generator(unsigned m) {
    auto mat = [](int a, int b, int c, int d) {
        IntMatrix g(2, 2);
        g.at(0, 0) = a;
        g.at(0, 1) = b;
        g.at(1, 0) = c;
        g.at(1, 1) = d;
        return g;
    };
    switch (m) {
        case 1: return IntMatrix::identity(2);
        case 2: return mat(-1, 0, 0, -1);
        case 3: return mat(-1, 1, -1, 0);
        case 4: return mat(0, 1, -1, 0);
        case 6: return mat(0, 1, -1, 1);
    }
    throw TorusError("gamma_generator: order must be 1, 2, 3, 4 or 6");
}

MatrixGroup binary_tetrahedral_model(std::size_t cap) {
    auto mat = [](std::initializer_list<int> vals) {
        IntMatrix g(4, 4);
        auto it = vals.begin();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) g.at(i, j) = *it++;
        return g;
    };
    // left multiplication by i, j, (1+i+j+k)/2 on {1, i, j, (1+i+j+k)/2}
    IntMatrix li = mat({0, -1, -1, -1,  //
                        1, 0, -1, 0,    //
                        0, 0, -1, -1,   //
                        0, 0, 2, 1});
    IntMatrix lj = mat({0, 1, -1, 0,  //
                        0, 1, 0, 1,   //
                        1, 1, 0, 1,   //
                        0, -2, 0, -1});
    IntMatrix lw = mat({0, 0, -1, -1,  //
                        0, 1, -1, 0,   //
                        0, 1, 0, 0,    //
                        1, -1, 1, 1});
    return close_group(4, {li, lj, lw}, cap);
}

MatrixGroup pgl3_model(std::size_t cap) {
    // S3 on the A2 *weight* lattice in the fundamental-weight basis
    // (columns are images): s1 fixes w2, s2 fixes w1. On this lattice the
    // reflections fix only the origin among the nine points fixed by the
    // 3-cycle, leaving four nonresolvable C3 orbits of two points each.
    IntMatrix s1(2, 2), s2(2, 2);
    s1.at(0, 0) = -1;
    s1.at(1, 0) = 1;
    s1.at(1, 1) = 1;
    s2.at(0, 0) = 1;
    s2.at(0, 1) = 1;
    s2.at(1, 1) = -1;
    return close_group(
        4, {int_block_diag({s1, s1}), int_block_diag({s2, s2})}, cap);
}

}  // namespace stratasheaf
