#include <doctest.h>

#include <random>

#include "qnt/core.hpp"

using namespace qnt;

TEST_CASE("bit 0 is the leftmost label character") {
    const BitString s = BitString::from_label("011");
    CHECK(s.bit(0) == 0);
    CHECK(s.bit(1) == 1);
    CHECK(s.bit(2) == 1);
    CHECK(s.label() == "011");
    CHECK(BitString::from_label("100").head() == 1);
}

TEST_CASE("integer round-trip and helpers") {
    for (std::uint32_t v = 0; v < 16; ++v) {
        const BitString s(v, 4);
        CHECK(BitString::from_label(s.label()) == s);
        CHECK((s ^ s).value() == 0);
        CHECK(s.negated().negated() == s);
    }
    CHECK(BitString::from_label("0101").tail() == BitString::from_label("101"));
    CHECK_THROWS_AS(BitString(8, 3), std::invalid_argument);
}

TEST_CASE("parity") {
    CHECK(parity(BitString::from_label("101")) == 0);
    CHECK(parity(BitString::from_label("000")) == 0);
    CHECK(parity(BitString::from_label("0101")) == 0);
    CHECK(parity(BitString::from_label("001")) == 1);
}

TEST_CASE("parity is xor-linear") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        const BitString s(static_cast<std::uint32_t>(rng() & 0x3f), 6);
        const BitString t(static_cast<std::uint32_t>(rng() & 0x3f), 6);
        CHECK(parity(s ^ t) == (parity(s) ^ parity(t)));
    }
}

TEST_CASE("alpha values") {
    const Vector theta = Vector::Constant(2, 0.58);
    CHECK(alpha(BitString::from_label("00"), theta) == doctest::Approx(0.3364).epsilon(1e-12));
    CHECK(alpha(BitString::from_label("11"), Vector::Ones(2)) == 0.0);
    CHECK_THROWS_AS(alpha(BitString::from_label("00"), Vector::Ones(3)),
                    std::invalid_argument);
}

TEST_CASE("alpha normalizes and reflects") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int k = 2 + static_cast<int>(rng() % 4);
        Vector theta(k);
        for (int j = 0; j < k; ++j) theta[j] = unif(rng);
        double total = 0.0;
        for (std::uint32_t v = 0; v < (1u << k); ++v) {
            const BitString s(v, k);
            total += alpha(s, theta);
            // negation duality (1 - (1 - θ) re-rounds, so not bitwise exact)
            CHECK(alpha(s.negated(), theta) ==
                  doctest::Approx(alpha(s, (1.0 - theta.array()).matrix()))
                      .epsilon(1e-12));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("alpha_grad closed cases") {
    const Vector theta = Vector::Constant(2, 0.58);
    CHECK(alpha_grad(BitString::from_label("00"), theta, 0) == doctest::Approx(0.58));
    CHECK(alpha_grad(BitString::from_label("10"), theta, 0) == doctest::Approx(-0.58));
    CHECK_THROWS_AS(alpha_grad(BitString::from_label("00"), theta, 2), std::out_of_range);
}

TEST_CASE("alpha_grad matches central finite differences") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    const double h = 1e-6;
    for (int rep = 0; rep < 20; ++rep) {
        const int k = 2 + static_cast<int>(rng() % 3);
        Vector theta(k);
        for (int j = 0; j < k; ++j) theta[j] = unif(rng);
        const BitString s(static_cast<std::uint32_t>(rng() & ((1u << k) - 1)), k);
        for (int j = 0; j < k; ++j) {
            Vector up = theta, dn = theta;
            up[j] += h;
            dn[j] -= h;
            const double fd = (alpha(s, up) - alpha(s, dn)) / (2 * h);
            const double an = alpha_grad(s, theta, j);
            CHECK(an == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("ParamVector validation") {
    CHECK_THROWS_AS(ParamVector(Vector::Constant(1, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(ParamVector(Vector::Constant(3, 1.5)), std::invalid_argument);
    CHECK(ParamVector(Vector::Constant(3, 0.58)).n() == 3);
}
