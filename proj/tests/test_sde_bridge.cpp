#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hhdkit/sde_bridge.hpp"
#include "test_support.hpp"

using namespace hhdkit;
using testing::random_matrix;
using testing::random_normal_matrix;
using testing::random_orthogonal;

namespace {

RealMatrix normal3() {
    RealMatrix a(3, 3);
    a << 3, 0, -4, 0, -1, 0, 4, 0, 3;
    return a;
}

RealMatrix counterexample() {
    RealMatrix a(3, 3);
    a << -1, 1, 1, 2, -1, 1, 2, 2, -1;
    return a;
}

RealMatrix random_skew(std::mt19937& rng, int n) {
    RealMatrix m = random_matrix(rng, n, -2.0, 2.0);
    return RealMatrix(0.5 * (m - m.transpose()));
}

RealMatrix random_spd(std::mt19937& rng, int n) {
    RealMatrix q = random_orthogonal(rng, n);
    RealMatrix lam = RealMatrix::Zero(n, n);
    std::uniform_real_distribution<double> dist(0.5, 3.0);
    for (int i = 0; i < n; ++i) lam(i, i) = dist(rng);
    return RealMatrix(q * lam * q.transpose());
}

}  // namespace

TEST_CASE("sde_to_hhd with D = I is strictly orthogonal") {
    std::mt19937 rng(3);
    RealMatrix u = random_spd(rng, 3);
    RealMatrix q = random_skew(rng, 3);
    SdeDecomposition s;
    s.d = identity(3);
    s.q = q;
    s.u = u;
    s.f = -(s.d + s.q) * s.u;
    Outcome<LinearHhd> out = sde_to_hhd(s);
    REQUIRE(out.ok());
    CHECK(max_abs(RealMatrix(out->p - u)) <= 1e-12);
    CHECK(max_abs(RealMatrix(out->h + q * u)) <= 1e-12);
    CHECK(is_strictly_orthogonal(*out, 1e-8));
}

TEST_CASE("sde_to_hhd trivial and failing cases") {
    std::mt19937 rng(4);
    RealMatrix sym = random_spd(rng, 3);

    SdeDecomposition trivial;
    trivial.d = identity(3);
    trivial.q = RealMatrix::Zero(3, 3);
    trivial.u = sym;
    trivial.f = -sym;
    Outcome<LinearHhd> out = sde_to_hhd(trivial);
    REQUIRE(out.ok());
    CHECK(max_abs(out->h) == 0.0);

    SdeDecomposition bad;
    bad.d = RealMatrix::Zero(2, 2);
    bad.d.diagonal() << 1, 2;
    bad.u = RealMatrix(2, 2);
    bad.u << 0, 1, 1, 0;
    bad.q = RealMatrix::Zero(2, 2);
    bad.f = -(bad.d + bad.q) * bad.u;
    Outcome<LinearHhd> fail = sde_to_hhd(bad);
    CHECK_FALSE(fail.ok());
    CHECK(fail.error.find("symmetric") != std::string::npos);
}

TEST_CASE("hhd_to_sde on the normal 3x3 example") {
    LinearHhd d = symmetric_split(normal3());
    Outcome<SdeDecomposition> out = hhd_to_sde(d);
    REQUIRE(out.ok());
    CHECK(max_abs(RealMatrix(out->d - identity(3))) == 0.0);
    CHECK(max_abs(RealMatrix(out->u - d.p)) == 0.0);
    RealMatrix q_expected(3, 3);
    q_expected << 0, 0, -4.0 / 3.0, 0, 0, 0, 4.0 / 3.0, 0, 0;
    CHECK(max_abs(RealMatrix(out->q - q_expected)) <= 1e-12);
    CHECK(max_abs(RealMatrix(out->q + out->q.transpose())) <= 1e-12);
    CHECK(validate_sde(*out).empty());
}

TEST_CASE("hhd_to_sde edge cases") {
    std::mt19937 rng(5);
    RealMatrix p = random_spd(rng, 3);
    LinearHhd pure_gradient{p, RealMatrix::Zero(3, 3), -p};
    Outcome<SdeDecomposition> out = hhd_to_sde(pure_gradient);
    REQUIRE(out.ok());
    CHECK(max_abs(out->q) == 0.0);

    RealMatrix skew = random_skew(rng, 3);
    LinearHhd hamiltonian{RealMatrix::Zero(3, 3), skew, skew};
    Outcome<SdeDecomposition> fail = hhd_to_sde(hamiltonian);
    CHECK_FALSE(fail.ok());
    CHECK(fail.error.find("singular") != std::string::npos);
}

TEST_CASE("equivalence_condition recovers Q for strictly orthogonal decompositions") {
    LinearHhd d = symmetric_split(normal3());
    Outcome<RealMatrix> q = equivalence_condition(identity(3), d);
    REQUIRE(q.ok());
    CHECK(max_abs(RealMatrix(*q + d.h * d.p.inverse())) <= 1e-10);
}

TEST_CASE("equivalence_condition with zero rotational part") {
    std::mt19937 rng(6);
    RealMatrix p = random_spd(rng, 3);
    LinearHhd d{p, RealMatrix::Zero(3, 3), -p};
    Outcome<RealMatrix> q = equivalence_condition(identity(3), d);
    REQUIRE(q.ok());
    CHECK(max_abs(*q) <= 1e-10);
}

TEST_CASE("the 3x3 counterexample admits no corresponding SDE decomposition") {
    RealMatrix a = counterexample();
    LinearHhd d{identity(3), a + identity(3), a};
    CHECK(std::abs(trace(d.p) + trace(a)) == 0.0);  // it is a valid HHD

    CHECK_FALSE(equivalence_condition(identity(3), d).ok());

    std::mt19937 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        RealMatrix dmat = random_spd(rng, 3);  // every SPD matrix commutes with P = I
        CHECK_FALSE(equivalence_condition(dmat, d).ok());
    }
}

TEST_CASE("equivalence_condition rejects non-commuting D") {
    LinearHhd d = symmetric_split(normal3());  // P = diag(-3, 1, -3)
    RealMatrix dmat(3, 3);
    dmat << 1, 1, 0, 1, 1, 0, 0, 0, 1;  // symmetric but does not commute with P
    dmat(0, 0) = 2;                     // keep it regular
    Outcome<RealMatrix> q = equivalence_condition(dmat, d);
    CHECK_FALSE(q.ok());
    CHECK(q.error.find("commute") != std::string::npos);
}

TEST_CASE("round trip preserves strictly orthogonal decompositions") {
    std::mt19937 rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + rep % 4;
        RealMatrix a = random_normal_matrix(rng, n, 0.3);
        LinearHhd d = symmetric_split(a);
        REQUIRE(is_strictly_orthogonal(d, 1e-8));
        Outcome<SdeDecomposition> sde = hhd_to_sde(d);
        REQUIRE(sde.ok());
        Outcome<LinearHhd> back = sde_to_hhd(*sde);
        REQUIRE(back.ok());
        CHECK(max_abs(RealMatrix(back->p - d.p)) <= 1e-8);
        CHECK(max_abs(RealMatrix(back->h - d.h)) <= 1e-8);
        CHECK(is_strictly_orthogonal(*back, 1e-8));
        CHECK(std::abs(trace(RealMatrix(sde->q * sde->u))) <= 1e-9 * (1.0 + max_abs(sde->u)));
    }
}
