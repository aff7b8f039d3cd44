#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hhdkit/planar_hhd.hpp"
#include "hhdkit/zpoly.hpp"
#include "test_support.hpp"

using namespace hhdkit;
using testing::random_zpoly;

namespace {

constexpr Complex I{0.0, 1.0};

bool coeff_close(Complex actual, Complex expected, double tol = 1e-15) {
    return std::abs(actual - expected) <= tol;
}

// the worked planar field f = -x^2 + 2y, g = -y^2 + x
RealPoly2 worked_f() {
    RealPoly2 f;
    f.add_term(2, 0, -1.0);
    f.add_term(0, 1, 2.0);
    return f;
}

RealPoly2 worked_g() {
    RealPoly2 g;
    g.add_term(0, 2, -1.0);
    g.add_term(1, 0, 1.0);
    return g;
}

}  // namespace

TEST_CASE("d_dz") {
    CHECK(d_dz(ZPoly::term(3, 0, 1.0)) == ZPoly::term(2, 0, 3.0));
    CHECK(d_dz(ZPoly::term(0, 2, 1.0)).empty());

    ZPoly w;  // (a/3) z^3 + (b/2) z^2 zb + c z zb^2 with a = 2, b = -1+i, c = 3i
    const Complex a = 2.0, b = -1.0 + I, c = 3.0 * I;
    w.add_term(3, 0, a / 3.0);
    w.add_term(2, 1, b / 2.0);
    w.add_term(1, 2, c);
    ZPoly dw = d_dz(w);
    CHECK(coeff_close(dw.coeff(2, 0), a));
    CHECK(coeff_close(dw.coeff(1, 1), b));
    CHECK(coeff_close(dw.coeff(0, 2), c));
}

TEST_CASE("d_dzbar") {
    CHECK(d_dzbar(ZPoly::term(0, 3, 1.0)) == ZPoly::term(0, 2, 3.0));
    CHECK(d_dzbar(ZPoly::term(2, 0, 1.0)).empty());

    ZPoly w;
    const Complex b = 2.0 - 3.0 * I, c = 0.5;
    w.add_term(2, 1, b / 2.0);
    w.add_term(1, 2, c);
    ZPoly dw = d_dzbar(w);
    CHECK(coeff_close(dw.coeff(2, 0), b / 2.0));
    CHECK(coeff_close(dw.coeff(1, 1), 2.0 * c));
}

TEST_CASE("integrate_dz") {
    const Complex a = 1.5 - 0.5 * I, b = 2.0 + I;
    ZPoly f;
    f.add_term(1, 0, a);
    f.add_term(0, 1, b);
    ZPoly w = integrate_dz(f);
    CHECK(coeff_close(w.coeff(2, 0), a / 2.0));
    CHECK(coeff_close(w.coeff(1, 1), b));

    ZPoly f2;
    f2.add_term(2, 0, a);
    f2.add_term(1, 1, b);
    f2.add_term(0, 2, Complex(4.0, 0.0));
    ZPoly w2 = integrate_dz(f2);
    CHECK(coeff_close(w2.coeff(3, 0), a / 3.0));
    CHECK(coeff_close(w2.coeff(2, 1), b / 2.0));
    CHECK(coeff_close(w2.coeff(1, 2), 4.0));

    CHECK(integrate_dz(ZPoly{}).empty());
}

TEST_CASE("conjugate") {
    CHECK(conjugate(ZPoly::term(2, 0, 1.0)) == ZPoly::term(0, 2, 1.0));
    CHECK(conjugate(ZPoly::term(1, 1, I)) == ZPoly::term(1, 1, -I));

    const Complex a = 2.0 + I, b = -1.0 + 3.0 * I;
    ZPoly w;
    w.add_term(2, 0, a);
    w.add_term(1, 1, b);
    ZPoly c = conjugate(w);
    CHECK(coeff_close(c.coeff(0, 2), std::conj(a)));
    CHECK(coeff_close(c.coeff(1, 1), std::conj(b)));
}

TEST_CASE("field_to_zpoly reproduces the worked example") {
    ZPoly F = field_to_zpoly(worked_f(), worked_g());
    CHECK(coeff_close(F.coeff(2, 0), -(1.0 + I) / 4.0));
    CHECK(coeff_close(F.coeff(1, 1), -(1.0 - I) / 2.0));
    CHECK(coeff_close(F.coeff(0, 2), -(1.0 + I) / 4.0));
    CHECK(coeff_close(F.coeff(1, 0), -1.5 * I));
    CHECK(coeff_close(F.coeff(0, 1), 0.5 * I));
    CHECK(F.terms().size() == 5);
}

TEST_CASE("x - i y is zbar") {
    ZPoly F = field_to_zpoly(RealPoly2::term(1, 0, 1.0), RealPoly2::term(0, 1, 1.0));
    CHECK(F == ZPoly::term(0, 1, 1.0));
}

TEST_CASE("field_to_zpoly agrees with the closed-form quadratic coefficients") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int rep = 0; rep < 25; ++rep) {
        QuadHomField q{double(coeff(rng)), double(coeff(rng)), double(coeff(rng)),
                       double(coeff(rng)), double(coeff(rng)), double(coeff(rng))};
        RealPoly2 f, g;
        f.add_term(2, 0, q.p1);
        f.add_term(1, 1, q.q1);
        f.add_term(0, 2, q.r1);
        g.add_term(2, 0, q.p2);
        g.add_term(1, 1, q.q2);
        g.add_term(0, 2, q.r2);
        ZPoly F = field_to_zpoly(f, g);
        QuadComplexCoeffs abc = quad_complex_coeffs(q);
        CHECK(coeff_close(F.coeff(2, 0), abc.a, 1e-14));
        CHECK(coeff_close(F.coeff(1, 1), abc.b, 1e-14));
        CHECK(coeff_close(F.coeff(0, 2), abc.c, 1e-14));
    }
}

TEST_CASE("zpoly_to_real_parts reproduces the worked V and H") {
    ZPoly W = integrate_dz(field_to_zpoly(worked_f(), worked_g()));
    RealParts parts = zpoly_to_real_parts(W);

    const RealPoly2& v = parts.v;
    CHECK(v.coeff(3, 0) == doctest::Approx(7.0 / 24.0).epsilon(1e-14));
    CHECK(v.coeff(2, 1) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(v.coeff(1, 2) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(v.coeff(1, 1) == doctest::Approx(-3.0 / 4.0).epsilon(1e-14));
    CHECK(v.coeff(0, 3) == doctest::Approx(7.0 / 24.0).epsilon(1e-14));
    CHECK(v.terms().size() == 5);

    const RealPoly2& h = parts.h;
    CHECK(h.coeff(3, 0) == doctest::Approx(-1.0 / 24.0).epsilon(1e-14));
    CHECK(h.coeff(2, 1) == doctest::Approx(-1.0 / 8.0).epsilon(1e-14));
    CHECK(h.coeff(2, 0) == doctest::Approx(-1.0 / 8.0).epsilon(1e-14));
    CHECK(h.coeff(1, 2) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(h.coeff(0, 3) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    CHECK(h.coeff(0, 2) == doctest::Approx(5.0 / 8.0).epsilon(1e-14));
    CHECK(h.terms().size() == 6);

    CHECK(zpoly_to_real_parts(ZPoly{}).v.empty());
    CHECK(zpoly_to_real_parts(ZPoly{}).h.empty());
}

TEST_CASE("second quadratic example: display convention of the potential") {
    // W itself expanded over (x, y) has real x^3 coefficient -19/39; the
    // canonical extraction V = -(W + conj W)/4 therefore carries +19/78.
    ZPoly w;
    w.add_term(3, 0, Complex(1.0 / 6.0, 0.0));
    w.add_term(2, 1, Complex(1.0, -1.5));                    // (2 - 3i)/2
    w.add_term(1, 2, Complex(-1.5, -1.0));                   // -(3 + 2i)/2
    w.add_term(0, 3, -(Complex(3.0, 2.0) / Complex(2.0, 3.0)) / 6.0);
    XYTermMap xy = zpoly_to_xy(w);
    CHECK(xy[{3, 0}].real() == doctest::Approx(-19.0 / 39.0).epsilon(1e-14));
    CHECK(xy[{3, 0}].imag() == doctest::Approx(-95.0 / 39.0).epsilon(1e-14));

    RealParts parts = zpoly_to_real_parts(w);
    CHECK(parts.v.coeff(3, 0) == doctest::Approx(19.0 / 78.0).epsilon(1e-13));
}

TEST_CASE("mod_squared_diff") {
    ZPoly holo = ZPoly::term(3, 0, 1.0);
    ZPoly msd = mod_squared_diff(holo);
    CHECK(msd == ZPoly::term(2, 2, 9.0));

    const Complex a = 1.0 + I, b = 2.0;
    ZPoly w;
    w.add_term(2, 0, a / 2.0);
    w.add_term(1, 1, b);
    w.add_term(0, 2, std::conj(a) * b / (2.0 * std::conj(b)));
    CHECK(mod_squared_diff(w).is_zero(1e-12));

    CHECK(mod_squared_diff(ZPoly{}).empty());
}

TEST_CASE("evaluate") {
    CHECK(coeff_close(evaluate(ZPoly::term(1, 1, 1.0), Complex(3.0, 4.0)), 25.0));
    CHECK(coeff_close(evaluate(ZPoly::term(2, 0, 1.0), I), -1.0));
    ZPoly W = integrate_dz(field_to_zpoly(worked_f(), worked_g()));
    CHECK(coeff_close(evaluate(W, Complex(0.0, 0.0)), 0.0));
}

TEST_CASE("integrate then differentiate is the identity") {
    // coefficient-exact on dyadic coefficients (covers every paper-derived
    // case); on arbitrary doubles binary64 has no exact preimage for some
    // coefficients under non-power-of-two divisors, where one ulp is the
    // attainable bound
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> numerator(-2048, 2048);
    for (int rep = 0; rep < 40; ++rep) {
        ZPoly dyadic;
        for (int m = 0; m <= 5; ++m)
            for (int k = 0; m + k <= 5; ++k)
                dyadic.add_term(m, k, Complex(numerator(rng) / 1024.0, numerator(rng) / 1024.0));
        CHECK(d_dz(integrate_dz(dyadic)) == dyadic);
    }
    for (int rep = 0; rep < 40; ++rep) {
        ZPoly f = random_zpoly(rng, 6);
        ZPoly back = d_dz(integrate_dz(f));
        for (const auto& [key, c] : f.terms()) {
            const Complex b = back.coeff(key.first, key.second);
            CHECK(std::abs(b.real() - c.real()) <= std::abs(c.real()) * 0x1p-52);
            CHECK(std::abs(b.imag() - c.imag()) <= std::abs(c.imag()) * 0x1p-52);
        }
        CHECK(back.terms().size() == f.terms().size());
    }
}

TEST_CASE("conjugate is an involution") {
    std::mt19937 rng(14);
    for (int rep = 0; rep < 40; ++rep) {
        ZPoly w = random_zpoly(rng, 6);
        CHECK(conjugate(conjugate(w)) == w);
    }
}

TEST_CASE("conjugation swaps the Wirtinger derivatives") {
    std::mt19937 rng(15);
    for (int rep = 0; rep < 40; ++rep) {
        ZPoly w = random_zpoly(rng, 6);
        CHECK(d_dzbar(conjugate(w)) == conjugate(d_dz(w)));
    }
}

TEST_CASE("extracted potentials reconstruct the encoded field") {
    // the field determined by dzbar/dt = dW/dz equals
    // (-Vx + Hy) - i (-Vy - Hx) for the extracted parts
    std::mt19937 rng(16);
    for (int rep = 0; rep < 30; ++rep) {
        ZPoly w = random_zpoly(rng, 5);
        RealParts parts = zpoly_to_real_parts(w);
        RealPoly2 f = RealPoly2() - d_dx(parts.v) + d_dy(parts.h);
        RealPoly2 g = RealPoly2() - d_dy(parts.v) - d_dx(parts.h);
        XYTermMap expected = zpoly_to_xy(d_dz(w));
        double worst = 0.0;
        for (const auto& [key, c] : expected) {
            worst = std::max(worst, std::abs(f.coeff(key.first, key.second) - c.real()));
            worst = std::max(worst, std::abs(g.coeff(key.first, key.second) + c.imag()));
        }
        for (const auto& [key, c] : f.terms()) {
            worst = std::max(worst, std::abs(c - expected[key].real()));
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("divergence- and rotation-free fields give holomorphic potentials") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 25; ++rep) {
        // f - i g := psi(z), a holomorphic polynomial
        ZPoly psi;
        for (int m = 0; m <= 4; ++m) psi.add_term(m, 0, Complex(dist(rng), dist(rng)));
        RealPoly2 f, g;
        for (const auto& [key, c] : zpoly_to_xy(psi)) {
            f.add_term(key.first, key.second, c.real());
            g.add_term(key.first, key.second, -c.imag());
        }
        ZPoly F = field_to_zpoly(f, g);
        ZPoly W = integrate_dz(F);
        for (const auto& [key, c] : W.terms()) {
            CHECK(key.second == 0);  // no zbar-bearing terms
        }
    }
}
