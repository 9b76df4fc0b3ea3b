#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stratasheaf/stratspace.hpp"

using namespace stratasheaf;

namespace {

RatVector rv(std::initializer_list<long> vals) {
    RatVector v;
    for (long x : vals) v.emplace_back(x);
    return v;
}

RatMatrix rm(std::size_t rows, std::size_t cols,
             std::initializer_list<long> vals) {
    RatMatrix m(rows, cols);
    auto it = vals.begin();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rat(*it++);
    return m;
}

Stalk line_stalk() {
    return make_chamber_stalk(normalize(1, {rv({1})}, {}));
}

StratifiedModel a1_germ_model(const std::string& suffix) {
    StratifiedModel m;
    m.metadata.name = "a1-germ" + suffix;
    StratumData s;
    s.id = "s" + suffix;
    s.dim = 0;
    s.stalk = line_stalk();
    m.strata.push_back(std::move(s));
    StratumData open;
    open.id = "open" + suffix;
    open.dim = 1;
    open.stalk = ExplicitStalk{{"identity-resolution"}};
    m.strata.push_back(std::move(open));
    m.arrows.push_back(HasseArrow{"s" + suffix, "open" + suffix, "collapse",
                                  ExplicitMap{{0, 0}}});
    return m;
}

StratifiedModel point_model() {
    StratifiedModel m;
    m.metadata.name = "point";
    StratumData s;
    s.id = "pt";
    s.dim = 0;
    s.stalk = ExplicitStalk{{"identity-resolution"}};
    m.strata.push_back(std::move(s));
    return m;
}

bool has_violation(const ValidationReport& r, ViolationCode code) {
    for (const auto& v : r.violations)
        if (v.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("single stratum with singleton stalk validates") {
    CHECK(validate(point_model()).ok());
    CHECK(validate(a1_germ_model("")).ok());
}

TEST_CASE("dimension order violation") {
    StratifiedModel m = a1_germ_model("");
    m.strata[0].dim = 5;
    ValidationReport r = validate(m);
    CHECK(!r.ok());
    CHECK(has_violation(r, ViolationCode::DimOrder));
}

TEST_CASE("duplicate ids and unknown endpoints are reported") {
    StratifiedModel m = a1_germ_model("");
    m.strata.push_back(m.strata[0]);
    CHECK(has_violation(validate(m), ViolationCode::DuplicateId));

    StratifiedModel m2 = a1_germ_model("");
    m2.arrows.push_back(HasseArrow{"nope", "open", "x", ExplicitMap{{0}}});
    CHECK(has_violation(validate(m2), ViolationCode::UnknownStratum));
}

TEST_CASE("declared permutation is checked against the matrix") {
    // -I on a 1-dim Picard space swaps the two chambers of {x = 0};
    // declaring the identity permutation must be flagged
    StratifiedModel m = a1_germ_model("");
    MonodromyGenerator g;
    g.matrix = rm(1, 1, {-1});
    g.permutation = Permutation{0, 1};
    m.strata[0].monodromy.push_back(g);
    CHECK(has_violation(validate(m), ViolationCode::PermMatrixMismatch));

    m.strata[0].monodromy[0].permutation = Permutation{1, 0};
    CHECK(validate(m).ok());
    auto perms = monodromy_permutations(m.strata[0]);
    REQUIRE(perms.size() == 1);
    CHECK(perms[0] == Permutation{1, 0});
}

TEST_CASE("bad tables, shapes and permutations") {
    StratifiedModel m = a1_germ_model("");
    m.arrows[0].gen = ExplicitMap{{0}};  // not total on a 2-element stalk
    CHECK(has_violation(validate(m), ViolationCode::BadTable));

    m.arrows[0].gen = ExplicitMap{{5, 0}};  // out of target range
    CHECK(has_violation(validate(m), ViolationCode::BadTable));

    m.arrows[0].gen = LinearMap{rm(1, 1, {1})};  // wrong shapes (target 0-dim)
    CHECK(has_violation(validate(m), ViolationCode::BadMatrixShape));

    StratifiedModel m2 = a1_germ_model("");
    MonodromyGenerator g;
    g.permutation = Permutation{0, 0};
    m2.strata[0].monodromy.push_back(g);
    CHECK(has_violation(validate(m2), ViolationCode::BadPermutation));

    StratifiedModel m3 = a1_germ_model("");
    MonodromyGenerator only_matrix;
    only_matrix.matrix = rm(1, 1, {1});
    m3.strata[1].monodromy.push_back(only_matrix);
    CHECK(has_violation(validate(m3), ViolationCode::MatrixOnExplicitStalk));

    StratifiedModel m4 = a1_germ_model("");
    MonodromyGenerator none;
    none.permutation = std::nullopt;
    m4.strata[0].monodromy.push_back(none);
    CHECK(has_violation(validate(m4), ViolationCode::MissingMatrix));
}

TEST_CASE("linear maps must restrict generically") {
    StratifiedModel m;
    StratumData deep;
    deep.id = "deep";
    deep.dim = 0;
    deep.stalk = line_stalk();
    m.strata.push_back(std::move(deep));
    StratumData shallow;
    shallow.id = "shallow";
    shallow.dim = 1;
    shallow.stalk = line_stalk();
    m.strata.push_back(std::move(shallow));

    m.arrows.push_back(
        HasseArrow{"deep", "shallow", "r", LinearMap{rm(1, 1, {1})}});
    CHECK(validate(m).ok());
    CHECK(gen_eval(m, m.arrows[0], 0) == 0);
    CHECK(gen_eval(m, m.arrows[0], 1) == 1);

    m.arrows[0].gen = LinearMap{rm(1, 1, {0})};  // lands on the wall
    CHECK(has_violation(validate(m), ViolationCode::NonGenericRestriction));
    CHECK_THROWS_AS(gen_eval(m, m.arrows[0], 0),
                    NonGenericRestrictionError);
}

TEST_CASE("product with a point is stalkwise trivial") {
    StratifiedModel m = a1_germ_model("");
    StratifiedModel p = product_model(m, point_model());
    REQUIRE(p.strata.size() == 2);
    for (const auto& s : p.strata) {
        StratumId base = s.id.substr(1, s.id.find(',') - 1);
        CHECK(s.stalk_size() == m.stratum(base).stalk_size());
    }
    CHECK(p.arrows.size() == m.arrows.size());
    CHECK(validate(p).ok());
}

TEST_CASE("product stalk sizes multiply") {
    StratifiedModel m1;
    StratumData a;
    a.id = "a";
    a.dim = 0;
    a.stalk = ExplicitStalk{{"x", "y"}};
    m1.strata.push_back(std::move(a));

    StratifiedModel m2;
    StratumData b;
    b.id = "b";
    b.dim = 0;
    b.stalk = ExplicitStalk{{"u", "v", "w"}};
    m2.strata.push_back(std::move(b));

    StratifiedModel p = product_model(m1, m2);
    REQUIRE(p.strata.size() == 1);
    CHECK(p.strata[0].stalk_size() == 6);
    CHECK(stalk_label(p.strata[0].stalk, 0) == "x|u");
}

TEST_CASE("product of two A1 germs gives the 2-dim coordinate cross") {
    StratifiedModel p = product_model(a1_germ_model("1"), a1_germ_model("2"));
    CHECK(validate(p).ok());
    const StratumData& deep = p.stratum("(s1,s2)");
    REQUIRE(std::holds_alternative<ChamberStalk>(deep.stalk));
    const auto& cs = std::get<ChamberStalk>(deep.stalk);
    CHECK(cs.arrangement.dimension == 2);
    REQUIRE(cs.arrangement.hyperplanes.size() == 2);
    CHECK(cs.chambers.chambers.size() == 4);
    ChamberSet oracle = brute_force_chambers(cs.arrangement);
    REQUIRE(oracle.chambers.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(oracle.chambers[i].signs == cs.chambers.chambers[i].signs);

    // pair indexing round-trips through witnesses
    StratifiedModel factor = a1_germ_model("1");
    const Stalk& f1 = factor.stratum("s1").stalk;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            std::size_t e = product_element_index(deep.stalk, f1, f1, i, j);
            CHECK(e < 4);
        }
}

TEST_CASE("product lifts monodromy factorwise") {
    StratifiedModel m1 = a1_germ_model("1");
    MonodromyGenerator g;
    g.matrix = rm(1, 1, {-1});
    m1.strata[0].monodromy.push_back(g);
    REQUIRE(validate(m1).ok());

    StratifiedModel p = product_model(m1, a1_germ_model("2"));
    CHECK(validate(p).ok());
    const StratumData& deep = p.stratum("(s1,s2)");
    REQUIRE(deep.monodromy.size() == 1);
    auto perms = monodromy_permutations(deep);
    REQUIRE(perms.size() == 1);
    // the lifted generator acts freely on the four chambers
    for (std::size_t i = 0; i < perms[0].size(); ++i)
        CHECK(perms[0][i] != i);
}

TEST_CASE("product propagates validation failure") {
    StratifiedModel bad = a1_germ_model("");
    bad.strata[0].dim = 9;
    CHECK_THROWS_AS(product_model(bad, point_model()), ModelError);
}
