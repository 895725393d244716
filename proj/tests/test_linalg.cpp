#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qsing/matrix.hpp"
#include "qsing/errors.hpp"

using namespace qsing;

namespace {

Cyclotomic zeta(std::int64_t j, std::int64_t m) { return Cyclotomic::root_of_unity(j, m); }

// alpha_1(P) of Q8: [[0,1],[-1,0]]
CMatrix rot2() {
    CMatrix m(2);
    m.at(0, 1) = Cyclotomic::one();
    m.at(1, 0) = -Cyclotomic::one();
    return m;
}

CMatrix random_matrix(std::mt19937& rng, int dim) {
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<int> pick(0, 3);
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Cyclotomic c = Cyclotomic::from_int(coeff(rng));
            if (pick(rng) == 0) c += zeta(1, 4);
            m.at(i, j) = c;
        }
    return m;
}

} // namespace

TEST_CASE("product, identity, equality") {
    CMatrix p = rot2();
    CMatrix p2 = p * p;
    CHECK(p2 == CMatrix::scalar(2, -Cyclotomic::one())); // P^2 = -I = diag(-1,-1)
    std::mt19937 rng1(1), rng2(1);
    CHECK(CMatrix::identity(3) * random_matrix(rng1, 3) == random_matrix(rng2, 3));
    // Q of alpha_1 has order 4: Q^4 = I
    CMatrix q = CMatrix::diagonal({zeta(1, 4), zeta(3, 4)});
    CHECK(q.pow(4) == CMatrix::identity(2));
    CHECK(q.order() == 4);
    CHECK_THROWS_AS(CMatrix::identity(2) * CMatrix::identity(3), DimensionMismatch);
}

TEST_CASE("determinants") {
    CHECK(rot2().det() == Cyclotomic::one());
    // diag(z7, z7^2, z7^4): exponents sum to 7 = 0 mod 7
    CMatrix d = CMatrix::diagonal({zeta(1, 7), zeta(2, 7), zeta(4, 7)});
    CHECK(d.det() == Cyclotomic::one());
    // type I, d=2, n'=2, l=1: B = [[0,1],[-1,0]], det = (-1)^(d-1) e^(2pi i/2) = 1
    CHECK(rot2().det() == Cyclotomic::one());
    CHECK(CMatrix::identity(4).det() == Cyclotomic::one());
}

TEST_CASE("det multiplicative (randomized)") {
    std::mt19937 rng(7);
    for (int it = 0; it < 10; ++it) {
        CMatrix a = random_matrix(rng, 3), b = random_matrix(rng, 3);
        CHECK((a * b).det() == a.det() * b.det());
    }
}

TEST_CASE("eigenvalue one") {
    CHECK(CMatrix::identity(2).has_eigenvalue_one());
    CHECK_FALSE(CMatrix::diagonal({zeta(1, 5), zeta(2, 5)}).has_eigenvalue_one());
    CHECK(CMatrix::diagonal({zeta(1, 3), Cyclotomic::one()}).has_eigenvalue_one());
}

TEST_CASE("quasireflection") {
    CHECK(CMatrix::diagonal({zeta(1, 3), Cyclotomic::one()}).is_quasireflection());
    CHECK_FALSE(CMatrix::diagonal({zeta(1, 5), zeta(2, 5)}).is_quasireflection());
    CHECK_FALSE(CMatrix::scalar(2, -Cyclotomic::one()).is_quasireflection());
    CHECK_THROWS_AS(CMatrix::identity(2).is_quasireflection(), std::invalid_argument);
    // quasireflection implies eigenvalue 1
    CMatrix qr = CMatrix::diagonal({zeta(1, 3), Cyclotomic::one()});
    CHECK(qr.has_eigenvalue_one());
}

TEST_CASE("inverse and rank") {
    CMatrix p = rot2();
    CHECK(p * p.inverse() == CMatrix::identity(2));
    std::mt19937 rng(3);
    for (int it = 0; it < 8; ++it) {
        CMatrix a = random_matrix(rng, 3);
        if (a.det().is_zero()) continue;
        CHECK(a * a.inverse() == CMatrix::identity(3));
        CHECK(a.rank() == 3);
    }
    CMatrix sing(2);
    sing.at(0, 0) = Cyclotomic::one();
    sing.at(0, 1) = Cyclotomic::one();
    sing.at(1, 0) = Cyclotomic::one();
    sing.at(1, 1) = Cyclotomic::one();
    CHECK(sing.rank() == 1);
    CHECK(sing.det().is_zero());
}

TEST_CASE("finite order det is root of unity") {
    // for g of finite order k, det(g)^k = 1
    CMatrix q = CMatrix::diagonal({zeta(1, 8), zeta(5, 8)});
    auto k = q.order();
    CHECK(q.det().pow(k) == Cyclotomic::one());
}

TEST_CASE("kronecker and blocks") {
    CMatrix a = rot2();
    CMatrix i2 = CMatrix::identity(2);
    CMatrix k = CMatrix::kronecker(a, i2);
    CHECK(k.dim() == 4);
    CHECK(k.at(0, 2) == Cyclotomic::one()); // (0,1) block times I
    CMatrix bd = CMatrix::block_diag(a, i2);
    CHECK(bd.dim() == 4);
    CHECK(bd.at(0, 1) == Cyclotomic::one());
    CHECK(bd.at(2, 2) == Cyclotomic::one());
}

TEST_CASE("keys distinguish matrices at a common conductor") {
    CMatrix a = CMatrix::diagonal({zeta(1, 4), zeta(3, 4)});
    CMatrix b = CMatrix::diagonal({zeta(3, 4), zeta(1, 4)});
    std::int64_t L = 4;
    CHECK(a.lifted_to(L).key() != b.lifted_to(L).key());
    CHECK(a.lifted_to(L).key() == a.lifted_to(L).key());
    // same value built through different conductors agrees after lifting
    CMatrix one_a = CMatrix::identity(2);
    CMatrix one_b = CMatrix::diagonal({zeta(4, 4).lifted_to(4), zeta(0, 4)});
    CHECK(one_a.lifted_to(4).key() == one_b.lifted_to(4).key());
}
