#include "stratasheaf/formulas.hpp"

#include <algorithm>
#include <map>

#include "stratasheaf/torusquot.hpp"

namespace stratasheaf {

DuValType du_val_A(unsigned l) {
    if (l < 1) throw FormulaError("A_l needs l >= 1");
    DuValType t;
    t.label = "A" + std::to_string(l);
    t.coxeter_number = l + 1;
    for (unsigned e = 1; e <= l; ++e) t.exponents.push_back(e);
    return t;
}

DuValType du_val_D(unsigned l) {
    if (l < 4) throw FormulaError("D_l needs l >= 4");
    DuValType t;
    t.label = "D" + std::to_string(l);
    t.coxeter_number = 2 * l - 2;
    for (unsigned e = 1; e <= 2 * l - 3; e += 2) t.exponents.push_back(e);
    t.exponents.push_back(l - 1);
    std::sort(t.exponents.begin(), t.exponents.end());
    return t;
}

DuValType du_val_E(unsigned l) {
    DuValType t;
    t.label = "E" + std::to_string(l);
    switch (l) {
        case 6:
            t.coxeter_number = 12;
            t.exponents = {1, 4, 5, 7, 8, 11};
            return t;
        case 7:
            t.coxeter_number = 18;
            t.exponents = {1, 5, 7, 9, 11, 13, 17};
            return t;
        case 8:
            t.coxeter_number = 30;
            t.exponents = {1, 7, 11, 13, 17, 19, 23, 29};
            return t;
    }
    throw FormulaError("E_l needs l in {6,7,8}");
}

DuValType du_val(const std::string& label) {
    if (label.size() < 2) throw FormulaError("bad du Val label: " + label);
    unsigned l = 0;
    try {
        l = static_cast<unsigned>(std::stoul(label.substr(1)));
    } catch (const std::exception&) {
        throw FormulaError("bad du Val label: " + label);
    }
    switch (label[0]) {
        case 'A': return du_val_A(l);
        case 'D': return du_val_D(l);
        case 'E': return du_val_E(l);
    }
    throw FormulaError("bad du Val label: " + label);
}

Int bellamy_count(const DuValType& t, unsigned n) {
    if (n < 1) throw FormulaError("bellamy_count needs n >= 1");
    Rat product(1);
    for (unsigned e : t.exponents) {
        Rat factor(static_cast<long>(n - 1) * t.coxeter_number, e + 1);
        factor.canonicalize();
        product *= factor + 1;
    }
    if (product.get_den() != 1)
        throw NonIntegralCountError("count for " + t.label + ", n = " +
                                    std::to_string(n) + " is not integral");
    return product.get_num();
}

Int sym_duval_count(const SurfaceProfile& p, unsigned n) {
    Int total(1);
    for (const auto& t : p.points) total *= bellamy_count(t, n);
    return total;
}

SurfaceProfile torus_surface_profile(unsigned m) {
    if (m != 1 && m != 2 && m != 3 && m != 4 && m != 6)
        throw FormulaError("torus_surface_profile: order must be 1, 2, 3, "
                           "4 or 6, got " + std::to_string(m));
    SurfaceProfile profile;
    if (m == 1) return profile;
    MatrixGroup g = close_group(2, {gamma_generator(m)});
    for (const auto& orbit : singular_orbits(g).orbits)
        profile.points.push_back(
            du_val_A(static_cast<unsigned>(orbit.stabilizer.order()) - 1));
    std::sort(profile.points.begin(), profile.points.end());
    return profile;
}

Int e_polynomial_check(const std::string& label, unsigned n) {
    struct Poly {
        long denom;
        std::vector<long> coeffs;  // highest degree first, without the n/d
    };
    static const std::map<std::string, Poly> polys = {
        {"E6", {30, {1728, -4320, 4140, -1900, 417, -35}}},
        {"E7", {280, {59049, -183708, 229635, -147420, 51156, -9072, 640}}},
        {"E8",
         {1344,
          {1265625, -4725000, 7323750, -6100500, 2943325, -820260, 121796,
           -7392}}},
    };
    auto it = polys.find(label);
    if (it == polys.end())
        throw FormulaError("e_polynomial_check: label must be E6, E7 or E8");
    Int value(0);
    for (long c : it->second.coeffs) value = value * n + c;
    Rat result = Rat(value * n, it->second.denom);
    result.canonicalize();
    if (result.get_den() != 1)
        throw NonIntegralCountError("polynomial value for " + label +
                                    " is not integral");
    return result.get_num();
}

}  // namespace stratasheaf
