#include "stratasheaf/models.hpp"

#include <algorithm>

#include "stratasheaf/formulas.hpp"

namespace stratasheaf {

namespace {

RatMatrix rat_matrix(std::size_t rows, std::size_t cols,
                     std::initializer_list<long> vals) {
    RatMatrix m(rows, cols);
    auto it = vals.begin();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rat(*it++);
    return m;
}

Stalk singleton_stalk() { return ExplicitStalk{{"identity-resolution"}}; }

Stalk two_chamber_line() {
    // {x = 0} in a one-dimensional Picard space: chambers x > 0 and x < 0
    return make_chamber_stalk(normalize(1, {{Rat(1)}}, {}));
}

}  // namespace

StratifiedModel monodromy_swap_model(bool with_monodromy) {
    StratifiedModel m;
    m.metadata.name = "monodromy-swap";
    m.metadata.notes =
        "one singular stratum whose monodromy interchanges the two local "
        "resolutions; no invariant section survives";

    StratumData sing;
    sing.id = "sing";
    sing.dim = 0;
    sing.stalk = two_chamber_line();
    if (with_monodromy) {
        MonodromyGenerator g;
        g.matrix = rat_matrix(1, 1, {-1});
        sing.monodromy.push_back(std::move(g));
    }
    m.strata.push_back(std::move(sing));

    StratumData open;
    open.id = "open";
    open.dim = 1;
    open.stalk = singleton_stalk();
    m.strata.push_back(std::move(open));

    m.arrows.push_back(
        HasseArrow{"sing", "open", "collapse", ExplicitMap{{0, 0}}});
    return m;
}

StratifiedModel min_orbit_cube_model() {
    StratifiedModel m;
    m.metadata.name = "min-orbit-cube";
    m.metadata.notes =
        "three minimal strata choosing resolution pairs at their two "
        "adjacent joins; agreement at each join cuts 64 assignments to 8";

    // minimal stratum l_i chooses (r_j, r_k) for the two joins j < k != i
    for (int i = 1; i <= 3; ++i) {
        std::vector<int> other;
        for (int j = 1; j <= 3; ++j)
            if (j != i) other.push_back(j);
        ExplicitStalk stalk;
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                stalk.labels.push_back("(r" + std::to_string(other[0]) + "=" +
                                       std::to_string(a) + ",r" +
                                       std::to_string(other[1]) + "=" +
                                       std::to_string(b) + ")");
        StratumData s;
        s.id = "l" + std::to_string(i);
        s.dim = 0;
        s.stalk = std::move(stalk);
        m.strata.push_back(std::move(s));

        // element (a, b) has index 2 (a - 1) + (b - 1)
        m.arrows.push_back(HasseArrow{"l" + std::to_string(i),
                                      "J" + std::to_string(other[0]), "proj",
                                      ExplicitMap{{0, 0, 1, 1}}});
        m.arrows.push_back(HasseArrow{"l" + std::to_string(i),
                                      "J" + std::to_string(other[1]), "proj",
                                      ExplicitMap{{0, 1, 0, 1}}});
    }
    for (int j = 1; j <= 3; ++j) {
        StratumData join;
        join.id = "J" + std::to_string(j);
        join.dim = 1;
        join.stalk = ExplicitStalk{{"1", "2"}};
        m.strata.push_back(std::move(join));
        m.arrows.push_back(HasseArrow{"J" + std::to_string(j), "open",
                                      "collapse", ExplicitMap{{0, 0}}});
    }
    StratumData open;
    open.id = "open";
    open.dim = 2;
    open.stalk = singleton_stalk();
    m.strata.push_back(std::move(open));
    return m;
}

StratifiedModel bn_wreath_model(unsigned n) {
    if (n < 1) throw ModelError("bn_wreath_model needs n >= 1");
    StratifiedModel m;
    m.metadata.name = "bn-wreath";
    m.metadata.notes =
        "n = " + std::to_string(n) +
        "; the local movable cones at the four deepest points are realized "
        "as n-chamber fans (rays y = kx in the positive quadrant) and tied "
        "together through a shared one-dimensional exceptional-degree "
        "coordinate on the diagonal stratum (minimal faithful encoding of "
        "the restriction maps, which are otherwise unspecified)";
    m.flags.q_factorial_symplectic = true;

    std::vector<RatVector> rays;
    for (unsigned k = 1; k < n; ++k)
        rays.push_back({Rat(-static_cast<long>(k)), Rat(1)});
    Arrangement fan = normalize(2, rays, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});

    for (const char* tag : {"p(1,1)", "p(1,-1)", "p(-1,1)", "p(-1,-1)"}) {
        StratumData s;
        s.id = tag;
        s.dim = 0;
        s.stalk = make_chamber_stalk(fan);
        m.strata.push_back(std::move(s));
        m.arrows.push_back(
            HasseArrow{tag, "diag", "exc", LinearMap{rat_matrix(1, 2, {1, 1})}});
    }

    StratumData diag;
    diag.id = "diag";
    diag.dim = 2;
    diag.stalk = make_chamber_stalk(normalize(1, {}, {{Rat(1)}}));
    m.strata.push_back(std::move(diag));
    m.arrows.push_back(
        HasseArrow{"diag", "open", "collapse", ExplicitMap{{0}}});

    StratumData open;
    open.id = "open";
    open.dim = 4;
    open.stalk = singleton_stalk();
    m.strata.push_back(std::move(open));
    return m;
}

StratifiedModel nodal_smallres_model(unsigned k) {
    if (k < 2) throw ModelError("nodal_smallres_model needs k >= 2");
    StratifiedModel m;
    m.metadata.name = "nodal-smallres";
    m.metadata.notes =
        "k = " + std::to_string(k) +
        " isolated nodes, two small resolutions each; ample sections exist "
        "for every choice but no flag certifies global projectivity";

    for (unsigned i = 1; i <= k; ++i) {
        StratumData s;
        s.id = "node" + std::to_string(i);
        s.dim = 0;
        s.stalk = two_chamber_line();
        m.strata.push_back(std::move(s));
        m.arrows.push_back(HasseArrow{"node" + std::to_string(i), "open",
                                      "collapse", ExplicitMap{{0, 0}}});
    }
    StratumData open;
    open.id = "open";
    open.dim = 1;
    open.stalk = singleton_stalk();
    m.strata.push_back(std::move(open));
    return m;
}

StratifiedModel wreath_torus_model(unsigned m_order, unsigned n) {
    if (m_order != 2 && m_order != 3 && m_order != 4 && m_order != 6)
        throw ModelError("wreath_torus_model needs m in {2,3,4,6}");
    if (n < 1) throw ModelError("wreath_torus_model needs n >= 1");

    StratifiedModel m;
    m.metadata.name = "wreath-torus";
    m.metadata.notes = "m = " + std::to_string(m_order) +
                       ", n = " + std::to_string(n) +
                       "; essential model of Sym^n of the torus quotient "
                       "surface, one stratum per singular point";
    m.flags.q_factorial_symplectic = true;

    SurfaceProfile profile = torus_surface_profile(m_order);
    for (std::size_t i = 0; i < profile.points.size(); ++i) {
        const DuValType& t = profile.points[i];
        Int count = bellamy_count(t, n);
        if (!count.fits_ulong_p())
            throw ModelError("stalk too large to materialize");
        ExplicitStalk stalk;
        std::size_t size = count.get_ui();
        stalk.labels.reserve(size);
        for (std::size_t r = 0; r < size; ++r)
            stalk.labels.push_back("r" + std::to_string(r + 1));

        StratumData s;
        s.id = "z" + std::to_string(i + 1) + "(" + t.label + ")";
        s.dim = 0;
        s.stalk = std::move(stalk);
        m.strata.push_back(std::move(s));
        m.arrows.push_back(
            HasseArrow{m.strata.back().id, "open", "collapse",
                       ExplicitMap{std::vector<std::size_t>(size, 0)}});
    }
    StratumData open;
    open.id = "open";
    open.dim = 2;
    open.stalk = singleton_stalk();
    m.strata.push_back(std::move(open));
    return m;
}

namespace {

unsigned parse_unsigned(const std::vector<std::string>& args, std::size_t i,
                        unsigned fallback, bool required) {
    if (i >= args.size()) {
        if (required) throw ModelError("missing builder parameter");
        return fallback;
    }
    try {
        return static_cast<unsigned>(std::stoul(args[i]));
    } catch (const std::exception&) {
        throw ModelError("bad builder parameter '" + args[i] + "'");
    }
}

}  // namespace

const std::vector<BuilderEntry>& builder_catalog() {
    static const std::vector<BuilderEntry> catalog = {
        {"monodromy-swap", "",
         [](const std::vector<std::string>&) { return monodromy_swap_model(); }},
        {"min-orbit-cube", "",
         [](const std::vector<std::string>&) { return min_orbit_cube_model(); }},
        {"bn-wreath", "n",
         [](const std::vector<std::string>& a) {
             return bn_wreath_model(parse_unsigned(a, 0, 0, true));
         }},
        {"nodal-smallres", "k=2",
         [](const std::vector<std::string>& a) {
             return nodal_smallres_model(parse_unsigned(a, 0, 2, false));
         }},
        {"wreath-torus", "m,n",
         [](const std::vector<std::string>& a) {
             return wreath_torus_model(parse_unsigned(a, 0, 0, true),
                                       parse_unsigned(a, 1, 0, true));
         }},
    };
    return catalog;
}

StratifiedModel build_named_model(const std::string& spec) {
    std::string name = spec;
    std::vector<std::string> args;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) {
                args.push_back(rest.substr(pos));
                break;
            }
            args.push_back(rest.substr(pos, comma - pos));
            pos = comma + 1;
        }
    }
    for (const auto& entry : builder_catalog())
        if (entry.name == name) return entry.build(args);
    throw ModelError("unknown builtin model '" + name + "'");
}

}  // namespace stratasheaf
