// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when
// anything fails. Everything is exact; no tolerances anywhere.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sheaf_oracle.h"
#include "stratasheaf/formulas.hpp"
#include "stratasheaf/models.hpp"
#include "stratasheaf/sheaf.hpp"
#include "stratasheaf/torusquot.hpp"

using namespace stratasheaf;

namespace {

struct Check {
    std::ostringstream detail;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

bool criterion_1(Check& c) {
    for (const char* label : {"E6", "E7", "E8"}) {
        DuValType t = du_val(label);
        for (unsigned n = 1; n <= 50; ++n)
            c.expect(bellamy_count(t, n) == e_polynomial_check(label, n),
                     std::string(label) + " polynomial mismatch at n=" +
                         std::to_string(n));
    }
    c.expect(bellamy_count(du_val("E6"), 2) == 833, "E6 at n=2 is not 833");
    return c.ok;
}

bool criterion_2(Check& c) {
    for (unsigned n = 1; n <= 6; ++n) {
        StratifiedModel m = bn_wreath_model(n);
        Int n4 = Int(n) * n * n * n;
        VerdictReport r = classify_model(m);
        c.expect(r.section_count == n4,
                 "n=" + std::to_string(n) + " count != n^4");
        c.expect(r.sections_listed && r.entries.size() == r.section_count,
                 "n=" + std::to_string(n) + " listing incomplete");
        for (const auto& e : r.entries)
            c.expect(e.verdict == Verdict::GloballyProjective,
                     "n=" + std::to_string(n) + " verdict not "
                     "GloballyProjective");
    }
    return c.ok;
}

bool criterion_3(Check& c) {
    StratifiedModel m = min_orbit_cube_model();
    Int raw(1);
    for (const auto& s : m.strata)
        if (s.id[0] == 'l') raw *= static_cast<unsigned long>(s.stalk_size());
    c.expect(raw == 64, "raw assignment space is not 64");
    c.expect(count_sections(m) == 8, "section count is not 8");
    c.expect(testing::brute_force_sections(m).size() == 8,
             "oracle disagrees");
    return c.ok;
}

bool criterion_4(Check& c) {
    c.expect(count_sections(monodromy_swap_model(true)) == 0,
             "with monodromy: count != 0");
    c.expect(count_sections(monodromy_swap_model(false)) == 2,
             "without monodromy: count != 2");
    return c.ok;
}

bool criterion_5(Check& c) {
    const unsigned orders[] = {2, 3, 4, 6};
    const std::size_t expected[] = {4, 3, 2, 1};
    for (std::size_t i = 0; i < 4; ++i) {
        IntMatrix g = gamma_generator(orders[i]);
        FixedLocus f = fixed_locus(g);
        c.expect(f.subtorus_basis.empty(),
                 "gamma" + std::to_string(orders[i]) + " locus not finite");
        c.expect(f.torsion_reps.size() == expected[i],
                 "gamma" + std::to_string(orders[i]) + " count mismatch");
        IntMatrix a = g;
        for (std::size_t r = 0; r < 2; ++r) a.at(r, r) -= 1;
        c.expect(Int(static_cast<unsigned long>(f.torsion_reps.size())) ==
                     abs(int_determinant(a)),
                 "gamma" + std::to_string(orders[i]) +
                     " count != |det(g-I)|");
    }
    return c.ok;
}

bool criterion_6(Check& c) {
    MatrixGroup g = pgl3_model();
    bool found_three_cycle = false;
    for (const auto& h : g.elements) {
        if (h == IntMatrix::identity(4)) continue;
        if (h * h * h == IntMatrix::identity(4)) {
            found_three_cycle = true;
            c.expect(fixed_locus(h).torsion_reps.size() == 9,
                     "3-cycle does not fix 9 points");
            break;
        }
    }
    c.expect(found_three_cycle, "no 3-cycle in the group");
    // "4 nonresolvable C3-singularities": four quotient singularities, i.e.
    // four orbits whose stabilizer is C3 and meets no reflection
    std::size_t c3_orbits = 0;
    for (const auto& o : singular_orbits(g).orbits)
        if (o.stabilizer.order() == 3) {
            ++c3_orbits;
            c.expect(o.verdict.kind == ResolvabilityKind::Nonresolvable,
                     "C3 orbit not Nonresolvable");
        }
    c.expect(c3_orbits == 4, "C3 singularity count is not 4");
    return c.ok;
}

bool criterion_7(Check& c) {
    MatrixGroup t = binary_tetrahedral_model();
    c.expect(t.order() == 24, "group order is not 24");
    IntMatrix minus = IntMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) minus.at(i, i) = -1;
    c.expect(fixed_locus(minus).torsion_reps.size() == 16,
             "Fix(-I) is not 16 points");
    std::size_t c2_points = 0, c2_orbits = 0;
    for (const auto& o : singular_orbits(t).orbits)
        if (o.stabilizer.order() == 2) {
            ++c2_orbits;
            c2_points += o.orbit.size();
            c.expect(o.verdict.kind == ResolvabilityKind::Nonresolvable,
                     "C2 orbit not Nonresolvable");
        }
    c.expect(c2_points == 12, "points with stabilizer C2 are not 12");
    c.expect(c2_orbits == 1, "the 12 points are not a single orbit");
    return c.ok;
}

bool criterion_8(Check& c) {
    std::mt19937_64 rng(987654321);
    std::uniform_int_distribution<long> entry(-4, 4);
    int done = 0;
    while (done < 200) {
        std::size_t dim = 1 + rng() % 4;
        std::size_t m = 1 + rng() % 8;
        std::vector<RatVector> normals;
        for (std::size_t i = 0; i < m; ++i) {
            RatVector v(dim);
            bool nonzero = false;
            for (auto& e : v) {
                e = Rat(entry(rng));
                nonzero = nonzero || e != 0;
            }
            if (!nonzero) v[rng() % dim] = 1;
            normals.push_back(std::move(v));
        }
        try {
            Arrangement a = normalize(dim, normals, {});
            ChamberSet fast = enumerate_chambers(a);
            ChamberSet slow = brute_force_chambers(a);
            bool same = fast.chambers.size() == slow.chambers.size();
            for (std::size_t i = 0; same && i < fast.chambers.size(); ++i)
                same = fast.chambers[i].signs == slow.chambers[i].signs;
            c.expect(same, "oracle mismatch on trial " + std::to_string(done));
            ++done;
        } catch (const EmptyAmbientError&) {
            continue;
        }
    }
    // general position: m hyperplanes in R^d make 2 * sum_{i<d} C(m-1,i)
    for (std::size_t d = 1; d <= 4; ++d)
        for (std::size_t m = 1; m <= 7; ++m) {
            std::vector<RatVector> normals;
            for (std::size_t t = 1; t <= m; ++t) {
                RatVector v(d);
                Rat p(1);
                for (std::size_t i = 0; i < d; ++i) {
                    v[i] = p;
                    p *= Rat(static_cast<long>(t));
                }
                normals.push_back(std::move(v));
            }
            std::size_t expected = 0;
            for (std::size_t i = 0; i < d && i <= m - 1; ++i) {
                std::size_t binom = 1;
                for (std::size_t j = 0; j < i; ++j)
                    binom = binom * (m - 1 - j) / (j + 1);
                expected += binom;
            }
            expected *= 2;
            c.expect(enumerate_chambers(normalize(d, normals, {}))
                             .chambers.size() == expected,
                     "general-position count off at d=" + std::to_string(d) +
                         " m=" + std::to_string(m));
        }
    return c.ok;
}

bool criterion_9(Check& c) {
    std::mt19937_64 rng(123123123);
    for (int trial = 0; trial < 100; ++trial) {
        StratifiedModel m = testing::random_small_model(rng);
        auto fast = global_sections(m);
        auto slow = testing::brute_force_sections(m);
        c.expect(fast == slow,
                 "engine/oracle mismatch on trial " + std::to_string(trial));
        c.expect(count_sections(m) ==
                     Int(static_cast<unsigned long>(slow.size())),
                 "count mismatch on trial " + std::to_string(trial));
    }
    return c.ok;
}

bool criterion_10(Check& c) {
    for (unsigned k = 2; k <= 5; ++k) {
        StratifiedModel m = nodal_smallres_model(k);
        VerdictReport r = classify_model(m);
        c.expect(r.section_count == Int(1) << k,
                 "k=" + std::to_string(k) + " count != 2^k");
        for (const auto& e : r.entries) {
            c.expect(e.verdict == Verdict::AmpleSectionExists_GerbeUnchecked,
                     "k=" + std::to_string(k) +
                         " verdict is not ample-but-uncertified");
            bool verified = e.witness &&
                            verify_ample_witness(m, e.section, *e.witness);
            c.expect(verified, "k=" + std::to_string(k) +
                                   " witness missing or fails substitution");
        }
    }
    return c.ok;
}

bool criterion_11(Check& c) {
    for (unsigned m : {2u, 3u, 4u, 6u})
        for (unsigned n = 1; n <= 5; ++n)
            c.expect(sym_duval_count(torus_surface_profile(m), n) ==
                         count_sections(wreath_torus_model(m, n)),
                     "m=" + std::to_string(m) + " n=" + std::to_string(n) +
                         " formula/engine mismatch");
    return c.ok;
}

struct Criterion {
    int number;
    const char* title;
    std::function<bool(Check&)> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "resolution counts match the expanded checking polynomials "
            "(E6/E7/E8, n in [1,50]; E6(2) = 833)",
         criterion_1},
        {2, "four-deep-point model classifies to n^4 sections, all "
            "GloballyProjective, for n in [1,6]",
         criterion_2},
        {3, "orbit-cube incompatibility leaves 8 of 64 assignments",
         criterion_3},
        {4, "monodromy swap kills both sections; removing it restores 2",
         criterion_4},
        {5, "plane rotation fixed-point counts are 4, 3, 2, 1 and equal "
            "|det(g - I)|",
         criterion_5},
        {6, "pgl3: the 3-cycle fixes 9 points and exactly 4 nonresolvable "
            "C3 singularities remain",
         criterion_6},
        {7, "binary tetrahedral: order 24, Fix(-I) = 16, twelve C2 points "
            "in one nonresolvable orbit",
         criterion_7},
        {8, "chamber enumeration matches the brute-force oracle on 200 "
            "random arrangements and general-position counts",
         criterion_8},
        {9, "global sections match full product enumeration on 100 random "
            "models",
         criterion_9},
        {10, "nodal model: 2^k sections, every ample witness re-verifies, "
             "none globally projective",
         criterion_10},
        {11, "closed-form counts equal engine counts for the torus quotient "
             "models (m in {2,3,4,6}, n in [1,5])",
         criterion_11},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check c;
        bool ok = false;
        std::string aborted;
        try {
            ok = criterion.run(c);
        } catch (const std::exception& e) {
            aborted = std::string("exception: ") + e.what();
        }
        if (ok) {
            std::cout << "PASS criterion " << criterion.number << ": "
                      << criterion.title << "\n";
        } else {
            ++failures;
            std::cout << "FAIL criterion " << criterion.number << ": "
                      << criterion.title;
            if (!aborted.empty())
                std::cout << " (" << aborted << ")";
            else if (!c.detail.str().empty())
                std::cout << " (" << c.detail.str() << ")";
            std::cout << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
