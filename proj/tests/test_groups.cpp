#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "qsing/group_spec.hpp"
#include "qsing/matrix_group.hpp"
#include "qsing/errors.hpp"

using namespace qsing;

namespace {

Cyclotomic zeta(std::int64_t j, std::int64_t m) { return Cyclotomic::root_of_unity(j, m); }

// alpha_1 of Q8
std::vector<std::pair<std::string, CMatrix>> q8_gens() {
    CMatrix p(2), q(2);
    p.at(0, 1) = Cyclotomic::one();
    p.at(1, 0) = -Cyclotomic::one();
    q = CMatrix::diagonal({zeta(1, 4), zeta(3, 4)});
    return {{"P", p}, {"Q", q}};
}

GroupSpec spec_I(std::int64_t m, std::int64_t n, std::int64_t r) {
    GroupSpec s;
    s.kind = GroupKind::I;
    s.m = m;
    s.n = n;
    s.r = r;
    return s;
}

} // namespace

TEST_CASE("validate type I") {
    CHECK(validate_spec(spec_I(5, 4, 4)).empty());
    CHECK(spec_I(5, 4, 4).d() == 2);
    CHECK(validate_spec(spec_I(1, 1, 1)).empty()); // trivial group
    CHECK(spec_I(1, 1, 1).is_trivial());
    // r = 1 with m > 1 fails the gcd condition
    CHECK_FALSE(validate_spec(spec_I(5, 4, 1)).empty());
    // d = 4 but 2 does not divide n/d = 1
    CHECK_FALSE(validate_spec(spec_I(5, 4, 2)).empty());
    // gcd(n, m) must be 1
    CHECK_FALSE(validate_spec(spec_I(4, 4, 3)).empty());
}

TEST_CASE("validate type III oddness") {
    GroupSpec s;
    s.kind = GroupKind::III;
    s.m = 1;
    s.n = 4;
    s.r = 1;
    auto viol = validate_spec(s);
    CHECK_FALSE(viol.empty());
    bool saw_odd = false;
    for (const auto& v : viol)
        if (v.find("odd") != std::string::npos) saw_odd = true;
    CHECK(saw_odd);
    s.n = 3;
    CHECK(validate_spec(s).empty());
    s.n = 9;
    CHECK(validate_spec(s).empty());
}

TEST_CASE("validate types II, IV, V, VI") {
    GroupSpec q8;
    q8.kind = GroupKind::II;
    q8.m = 1;
    q8.n = 4;
    q8.r = 1;
    q8.l = 0;
    q8.k = 3;
    CHECK(validate_spec(q8).empty());
    CHECK(abstract_order(q8) == 8);

    GroupSpec ostar;
    ostar.kind = GroupKind::IV;
    ostar.m = 1;
    ostar.n = 3;
    ostar.r = 1;
    ostar.l = 0;
    ostar.k = 2;
    CHECK(validate_spec(ostar).empty());
    CHECK(abstract_order(ostar) == 48);

    GroupSpec istar;
    istar.kind = GroupKind::V;
    istar.m = 1;
    istar.n = 1;
    istar.r = 1;
    CHECK(validate_spec(istar).empty());
    CHECK(abstract_order(istar) == 120);

    GroupSpec bad_v = istar;
    bad_v.n = 3; // gcd(mn, 30) != 1
    CHECK_FALSE(validate_spec(bad_v).empty());

    GroupSpec vi;
    vi.kind = GroupKind::VI;
    vi.m = 1;
    vi.n = 1;
    vi.r = 1;
    vi.l = 0;
    vi.k = 0;
    CHECK(validate_spec(vi).empty());
    CHECK(abstract_order(vi) == 240);
}

TEST_CASE("abstract orders of small kinds") {
    GroupSpec t;
    t.kind = GroupKind::Tstar;
    t.v = 1;
    CHECK(abstract_order(t) == 24);
    t.v = 2;
    CHECK(abstract_order(t) == 72);
    GroupSpec q;
    q.kind = GroupKind::Q2a;
    q.a = 3;
    CHECK(abstract_order(q) == 8);
    GroupSpec i;
    i.kind = GroupKind::Istar;
    CHECK(abstract_order(i) == 120);
    CHECK(abstract_order(spec_I(5, 4, 4)) == 20);
}

TEST_CASE("generate closure") {
    auto g = generate(q8_gens(), 16);
    CHECK(g.order() == 8);
    CHECK(g.element(0).is_identity());
    auto t = generate({{"I", CMatrix::identity(2)}}, 4);
    CHECK(t.order() == 1);
    CHECK_THROWS_AS(generate(q8_gens(), 4), BoundExceeded);
}

TEST_CASE("group is closed and has inverses") {
    auto g = generate(q8_gens(), 16);
    for (int i = 0; i < g.order(); ++i) {
        for (int j = 0; j < g.order(); ++j) CHECK(g.mul(i, j) >= 0);
        CHECK(g.mul(i, g.inverse(i)) == 0);
    }
}

TEST_CASE("fixed point freeness") {
    auto fpf = generate({{"A", CMatrix::diagonal({zeta(1, 5), zeta(2, 5)})}}, 10);
    CHECK(fpf.order() == 5);
    CHECK(is_fixed_point_free(fpf));

    auto not_fpf = generate({{"A", CMatrix::diagonal({zeta(1, 3), Cyclotomic::one()})}}, 10);
    CHECK_FALSE(is_fixed_point_free(not_fpf));

    CHECK(is_fixed_point_free(generate(q8_gens(), 16)));

    // fpf implies no quasireflections
    for (int i = 1; i < fpf.order(); ++i) CHECK_FALSE(fpf.element(i).is_quasireflection());
}

TEST_CASE("pq conditions") {
    CHECK(pq_conditions_hold(generate(q8_gens(), 16)));
    // Klein four group as diag(+-1, +-1)
    auto klein = generate({{"A", CMatrix::diagonal({-Cyclotomic::one(), Cyclotomic::one()})},
                           {"B", CMatrix::diagonal({Cyclotomic::one(), -Cyclotomic::one()})}},
                          8);
    CHECK(klein.order() == 4);
    CHECK_FALSE(pq_conditions_hold(klein));
    CHECK_THROWS_AS(pq_conditions_hold(generate(q8_gens(), 16), 4), BoundExceeded);
}

TEST_CASE("sylow shapes") {
    // Z/20 as a fixed-point-free diagonal group
    auto z20 = generate({{"A", CMatrix::diagonal({zeta(1, 20), zeta(3, 20)})}}, 25);
    CHECK(z20.order() == 20);
    auto shapes = sylow_shape(z20);
    CHECK(shapes.at(2) == SylowShape::Cyclic);
    CHECK(shapes.at(5) == SylowShape::Cyclic);

    auto q8 = generate(q8_gens(), 16);
    CHECK(sylow_shape(q8).at(2) == SylowShape::GeneralizedQuaternion);

    auto klein = generate({{"A", CMatrix::diagonal({-Cyclotomic::one(), Cyclotomic::one()})},
                           {"B", CMatrix::diagonal({Cyclotomic::one(), -Cyclotomic::one()})}},
                          8);
    CHECK(sylow_shape(klein).at(2) == SylowShape::Other);
}

TEST_CASE("element orders and exponent") {
    auto q8 = generate(q8_gens(), 16);
    int order4 = 0, order2 = 0;
    for (int i = 1; i < q8.order(); ++i) {
        auto o = q8.element_order(i);
        if (o == 4) ++order4;
        if (o == 2) ++order2;
    }
    CHECK(order4 == 6);
    CHECK(order2 == 1); // only -I
    CHECK(q8.exponent() == 4);
}

TEST_CASE("all_specs inventory") {
    auto specs = all_specs(48, true);
    auto has = [&](GroupKind k, std::int64_t m, std::int64_t n) {
        return std::any_of(specs.begin(), specs.end(), [&](const GroupSpec& s) {
            return s.kind == k && s.m == m && s.n == n;
        });
    };
    CHECK(has(GroupKind::I, 5, 4));
    CHECK(has(GroupKind::I, 1, 48));
    CHECK(has(GroupKind::III, 1, 3));
    CHECK(has(GroupKind::IV, 1, 3));
    CHECK(has(GroupKind::Tstar, 1, 1));
    // every emitted spec validates
    for (const auto& s : specs) CHECK(validate_spec(s).empty());
    // orders respect the bound
    for (const auto& s : specs) CHECK(abstract_order(s) <= 48);
    // no duplicates
    for (size_t i = 1; i < specs.size(); ++i) CHECK(!(specs[i - 1] == specs[i]));
}

TEST_CASE("group spec json round trip") {
    GroupSpec s = spec_I(5, 4, 4);
    nlohmann::json j;
    to_json(j, s);
    CHECK(j["kind"] == "I");
    CHECK(j["m"] == 5);
    CHECK(j["l"].is_null());
    GroupSpec back;
    from_json(j, back);
    CHECK(back == s);
}
