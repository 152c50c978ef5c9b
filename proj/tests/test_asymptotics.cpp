#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hyperlat/asymptotics.hpp"

#include <cmath>

using namespace hyperlat;

namespace {
const std::vector<std::pair<int, int>> kGrid = {
    {7, 3}, {8, 3}, {4, 5}, {5, 4}, {4, 6}, {3, 7}, {3, 8}};
}

TEST_CASE("spectral data: frozen eigenvalues and symbolic identities") {
    auto s45 = spectral(validate_params(4, 5));
    CHECK(s45.trace == 4);
    CHECK(s45.det == 1);
    CHECK(s45.lambda_plus == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-12));
    CHECK(s45.lambda_minus == doctest::Approx(2 - std::sqrt(3.0)).epsilon(1e-12));

    auto s37 = spectral(validate_params(3, 7));
    CHECK(s37.trace == 3);
    CHECK(s37.lambda_plus == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-12));

    auto s73 = spectral(validate_params(7, 3));
    CHECK(s73.lambda_plus * s73.lambda_minus == doctest::Approx(1.0).epsilon(1e-12));

    for (auto [p, q] : kGrid) {
        auto s = spectral(validate_params(p, q));
        CHECK(s.lambda_plus > 1.0);
        CHECK(s.lambda_minus > 0.0);
        CHECK(s.lambda_minus < 1.0);
        CHECK(s.lambda_plus + s.lambda_minus ==
              doctest::Approx(double(s.trace)).epsilon(1e-12));
    }
}

TEST_CASE("cheeger constant: frozen values and expression agreement") {
    CHECK(cheeger_constant(validate_params(7, 3)) ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(cheeger_constant(validate_params(4, 5)) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(cheeger_constant(validate_params(3, 7)) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    // cheeger_constant internally asserts the alternative limit expressions at
    // 1e-12 relative; evaluate it across a wider grid.
    for (int p = 3; p <= 12; ++p)
        for (int q = 3; q <= 12; ++q)
            if (2 * (p + q) < p * q) CHECK(cheeger_constant(validate_params(p, q)) > 0);
}

TEST_CASE("ball ratios: exact rationals, strict bound, convergence") {
    auto r73 = ball_ratio_sequence(validate_params(7, 3), 40);
    CHECK(r73[1] == BigRational(3, 5)); // 21/35, the Fig. 7 value
    CHECK(r73[0] == BigRational(1));    // 7/7
    const BigRational ie2 = cheeger_constant_squared(validate_params(7, 3));
    for (const auto& r : r73) CHECK(r * r > ie2);
    CHECK(std::fabs(to_double(r73[40]) - 1.0 / std::sqrt(5.0)) <= 1e-6 / std::sqrt(5.0));

    auto r37 = ball_ratio_sequence(validate_params(3, 7), 2);
    CHECK(r37[0] == BigRational(15, 3)); // root triangle: 15 boundary edges over 3
    CHECK(r37[1] == BigRational(45, 15));
}

TEST_CASE("minimal shape ratios stay above i_e and converge") {
    for (auto [p, q] : kGrid) {
        const auto params = validate_params(p, q);
        const LayerCounts counts(params, 21);
        std::vector<BigInt> sizes = {counts.ball_size(5), counts.ball_size(20),
                                     counts.ball_size(10) + 3};
        const auto ratios = minimal_shape_ratio_sequence(params, sizes);
        const BigRational ie2 = cheeger_constant_squared(params);
        for (const auto& r : ratios) CHECK(r * r > ie2);
        const double ie = cheeger_constant(params);
        CHECK(std::fabs(to_double(ratios[1]) - ie) <= 1e-4 * ie);
    }
}

TEST_CASE("growth function closed forms") {
    auto f45 = growth_function(validate_params(4, 5));
    CHECK(f45.numerator == Poly{{BigInt(4), BigInt(4)}});
    CHECK(f45.denominator == Poly{{BigInt(1), BigInt(-4), BigInt(1)}});

    // f(0) spot values.
    for (auto [p, q] : kGrid) {
        auto f = growth_function(validate_params(p, q));
        const BigInt f0 = f.numerator.at(0); // denominator constant is 1
        CHECK(f.denominator.at(0) == 1);
        if (p >= 4)
            CHECK(f0 == p);
        else
            CHECK(f0 == 3 * (q - 2));
    }
}

TEST_CASE("series coefficients match the transfer-matrix recursion") {
    auto c45 = series_coefficients(growth_function(validate_params(4, 5)), 3);
    CHECK(c45[0] == 4);
    CHECK(c45[1] == 20);
    CHECK(c45[2] == 76);
    CHECK(c45[3] == 284);

    for (auto [p, q] : kGrid) {
        const auto params = validate_params(p, q);
        const auto coeffs = series_coefficients(growth_function(params), 60);
        const LayerCounts counts(params, 61);
        for (int n = 0; n <= 60; ++n) {
            if (p >= 4)
                CHECK(coeffs[n] == counts.layer_size(n));
            else
                CHECK(coeffs[n] == (n == 0 ? BigInt(3 * (q - 2)) : counts.layer_size(n + 1)));
        }
    }
}

TEST_CASE("animal counts: corollary sequence vs closed form") {
    const auto p45 = validate_params(4, 5);
    CHECK(animal_count_exact(p45, 0) == 4);
    CHECK(animal_count_exact(p45, 1) == 20);
    CHECK(animal_count_closed_form(p45, 1) == doctest::Approx(20.0).epsilon(1e-12));

    const auto p37 = validate_params(3, 7);
    CHECK(animal_count_exact(p37, 1) == 15); // 3 + (3 + 9)
    CHECK(animal_count_closed_form(p37, 1) == doctest::Approx(15.0).epsilon(1e-9));
    CHECK_THROWS_AS(animal_count_exact(p37, 0), NonsenseParams);

    for (auto [p, q] : kGrid) {
        const auto params = validate_params(p, q);
        for (int n = (p >= 4 ? 0 : 1); n <= 30; ++n) {
            const double exact = to_double(animal_count_exact(params, n));
            const double closed = animal_count_closed_form(params, n);
            CHECK(std::fabs(closed - exact) <= 1e-9 * std::max(1.0, exact));
        }
    }
}

TEST_CASE("euler characteristic: exact rationals") {
    CHECK(euler_characteristic(validate_params(7, 3)) == BigRational(-1, 14));
    CHECK(euler_characteristic(validate_params(3, 7)) == BigRational(-1, 6));
    CHECK(euler_characteristic(validate_params(4, 5)) == BigRational(-1, 4));
    for (int p = 3; p <= 12; ++p) {
        for (int q = 3; q <= 12; ++q) {
            if (2 * (p + q) >= p * q) continue;
            const auto chi = euler_characteristic(validate_params(p, q));
            CHECK(chi == BigRational(2 * q + 2 * p - p * q, 2 * p));
            CHECK(chi < 0);
        }
    }
}

TEST_CASE("remark bounds: monotone, and above the provable threshold") {
    // The printed claim "> 1" only holds for q >= 4 and for the p = 3 form:
    // at q = 3 the expression starts at 1/2. In every case the sequence
    // decreases in n towards i_e, staying strictly above it.
    for (auto [p, q] : kGrid) {
        const auto params = validate_params(p, q);
        const auto bounds = remark_bound_sequence(params, 40);
        const BigRational ie2 = cheeger_constant_squared(params);
        for (const auto& b : bounds) {
            CHECK(b > 0);
            CHECK(b * b > ie2);
            if (q >= 4) CHECK(b > 1);
        }
        for (std::size_t n = 1; n < bounds.size(); ++n)
            CHECK(bounds[n] <= bounds[n - 1]);
    }
    // Increasing in q at fixed p = 3.
    const auto b37 = remark_bound_sequence(validate_params(3, 7), 20);
    const auto b38 = remark_bound_sequence(validate_params(3, 8), 20);
    for (std::size_t n = 0; n < b37.size(); ++n) CHECK(b38[n] > b37[n]);
}
