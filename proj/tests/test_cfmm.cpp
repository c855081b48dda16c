#include <cmath>
#include <random>

#include "doctest.h"
#include "fxamm/cfmm.hpp"
#include "helpers.hpp"

using namespace fxamm;
using fxamm::testing::random_pool;
using fxamm::testing::uniform;

TEST_CASE("invariant residual matches each rule") {
    CHECK(invariant_residual(sum_rule(1.25), 22500.0, 0.0, 12500.0, 8000.0) == 0.0);
    CHECK(invariant_residual(product_rule(1.0), 0.0, 1.0, 1.0, 1.0) == 0.0);

    // Mixed-rule point obtained from the closed-form counterparty solve.
    const CfmmRule mixed = mixed_rule(5.0, 1.0);
    CHECK(std::fabs(invariant_residual(mixed, 2.0, 1.0, 0.9, 1.10296)) < 1e-5);
    const double y = solve_balance_y(mixed, 2.0, 1.0, 0.9);
    CHECK(std::fabs(invariant_residual(mixed, 2.0, 1.0, 0.9, y)) < 1e-12);

    CHECK_THROWS_AS(invariant_residual(product_rule(), 0.0, 1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(invariant_residual(mixed, 2.0, 1.0, 1.0, -0.5), std::domain_error);
}

TEST_CASE("counterparty balance solve") {
    CHECK(solve_balance_y(product_rule(1.0), 0.0, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));

    // alpha = 0 collapses the mixed rule onto the product rule bit for bit.
    CHECK(solve_balance_y(mixed_rule(0.0, 1.0), 2.0, 1.0, 0.8) ==
          solve_balance_y(product_rule(1.0), 2.0, 1.0, 0.8));
    CHECK(solve_balance_y(mixed_rule(0.0, 1.0), 2.0, 1.0, 0.8) == doctest::Approx(1.25));

    const double y = solve_balance_y(mixed_rule(5.0, 1.0), 2.0, 1.0, 0.9);
    CHECK(y == doctest::Approx(1.10296).epsilon(1e-5));
    const double x = solve_balance_x(mixed_rule(5.0, 1.0), 2.0, 1.0, y);
    CHECK(x == doctest::Approx(0.9).epsilon(1e-12));

    CHECK_THROWS_AS(solve_balance_y(sum_rule(1.25), 22500.0, 0.0, 22500.0), std::domain_error);
    CHECK_THROWS_AS(solve_balance_y(product_rule(), 0.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(solve_balance_x(product_rule(), 0.0, 1.0, -1.0), std::domain_error);
}

TEST_CASE("exact-out quotes") {
    const PoolState sum_pool = make_pool(sum_rule(1.25), 12500.0, 10000.0, 0.0);
    CHECK(quote_exact_out(sum_pool, Side::RedeemDomestic, 1.25).amount_in == 1.0);

    const PoolState sum_fee = make_pool(sum_rule(1.25), 12500.0, 10000.0, 1e-4);
    const Fill f = quote_exact_out(sum_fee, Side::RedeemDomestic, 1.25);
    CHECK(f.amount_in == doctest::Approx(1.000100010).epsilon(1e-9));
    CHECK(f.fee_paid == 1e-4 * f.amount_in);

    const PoolState prod = make_pool(product_rule(1.0), 1.0, 1.0, 0.0);
    CHECK(quote_exact_out(prod, Side::RedeemDomestic, 0.5).amount_in ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(quote_exact_out(prod, Side::RedeemDomestic, 1.0), LiquidityError);
    CHECK_THROWS_AS(quote_exact_out(prod, Side::RedeemDomestic, 0.0), std::domain_error);
    CHECK_THROWS_AS(quote_exact_out(prod, Side::RedeemForeign, -0.1), std::domain_error);
}

TEST_CASE("exact-in quotes") {
    const PoolState prod = make_pool(product_rule(1.0), 1.0, 1.0, 0.0);
    CHECK(quote_exact_in(prod, Side::RedeemDomestic, 1.0).amount_out ==
          doctest::Approx(0.5).epsilon(1e-12));

    // Sum-rule quotes are size-independent.
    const PoolState sum_fee = make_pool(sum_rule(1.25), 12500.0, 10000.0, 1e-4);
    const double r1 = quote_exact_in(sum_fee, Side::RedeemDomestic, 1.0).amount_out / 1.0;
    const double r100 = quote_exact_in(sum_fee, Side::RedeemDomestic, 100.0).amount_out / 100.0;
    CHECK(r1 == doctest::Approx(1.249875).epsilon(1e-12));
    CHECK(r100 == doctest::Approx(1.249875).epsilon(1e-12));

    // Mixed at alpha = 0 equals product for any size.
    const PoolState mix0 = make_pool(mixed_rule(0.0, 1.0), 1.0, 1.0, 0.0);
    for (double size : {0.01, 0.3, 1.7}) {
        CHECK(quote_exact_in(mix0, Side::RedeemDomestic, size).amount_out ==
              quote_exact_in(prod, Side::RedeemDomestic, size).amount_out);
    }

    CHECK_THROWS_AS(quote_exact_in(prod, Side::RedeemDomestic, 0.0), std::domain_error);
    CHECK_THROWS_AS(quote_exact_in(sum_fee, Side::RedeemDomestic, 1e9), LiquidityError);
}

TEST_CASE("apply_fill keeps zero-fee trades on the curve and grows fee pools") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        PoolState pool = random_pool(rng, RuleKind::Product);
        const Fill fill = quote_exact_in(pool, Side::RedeemDomestic, uniform(rng, 0.01, 0.5));
        const PoolState next = apply_fill(pool, fill);
        CHECK(std::fabs(invariant_residual(next.rule, pool.sum0, pool.product0, next.x, next.y)) <
              1e-12 * pool.product0);
    }
    for (int i = 0; i < 50; ++i) {
        PoolState pool = random_pool(rng, RuleKind::Product, 5e-4);
        const CurveConstants before = curve_constants(pool);
        const Side side = i % 2 == 0 ? Side::RedeemDomestic : Side::RedeemForeign;
        const Fill fill = quote_exact_in(pool, side, uniform(rng, 0.01, 0.5));
        const PoolState next = apply_fill(pool, fill);
        CHECK(curve_constants(next).product > before.product);
        CHECK(next.product0 == pool.product0);  // creation constants never move
        CHECK(next.sum0 == pool.sum0);
    }
    // Input state is a value; applying a fill does not touch it.
    const PoolState pool = make_pool(product_rule(1.0), 1.0, 1.0, 0.0);
    const Fill fill = quote_exact_in(pool, Side::RedeemDomestic, 0.25);
    (void)apply_fill(pool, fill);
    CHECK(pool.x == 1.0);
    CHECK(pool.y == 1.0);
    CHECK_THROWS_AS(apply_fill(pool, Fill{Side::RedeemDomestic, 0.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("marginal rate") {
    CHECK(marginal_rate(make_pool(product_rule(1.0), 1.0, 1.0, 0.0)) == 1.0);
    CHECK(marginal_rate(make_pool(product_rule(1.0), 2.0, 1.0, 0.0)) == 2.0);
    CHECK(marginal_rate(make_pool(sum_rule(1.25), 3.0, 17.0, 0.0)) == 1.25);
    CHECK(marginal_rate(make_pool(mixed_rule(0.0, 1.0), 2.0, 1.0, 0.0)) == 2.0);
    // Large alpha approaches the sum-rule rate.
    CHECK(marginal_rate(make_pool(mixed_rule(1e9, 1.3), 2.0, 1.0, 0.0)) ==
          doctest::Approx(1.3).epsilon(1e-6));
}

TEST_CASE("zero-fee sequences preserve the creation invariant") {
    std::mt19937_64 rng(11);
    for (RuleKind kind : {RuleKind::Sum, RuleKind::Product, RuleKind::Mixed}) {
        for (double alpha : {0.0, 1.0, 5.0, 100.0}) {
            PoolState pool = random_pool(rng, kind, 0.0, kind == RuleKind::Mixed ? alpha : 0.0);
            const double sum0 = pool.sum0;
            const double product0 = pool.product0;
            for (int t = 0; t < 500; ++t) {
                const Side side = rng() % 2 == 0 ? Side::RedeemDomestic : Side::RedeemForeign;
                const double bal = side == Side::RedeemDomestic ? pool.x : pool.y;
                const double size = uniform(rng, 1e-4, 0.3) * bal;
                const Fill fill = t % 2 == 0 ? quote_exact_out(pool, side, size)
                                             : quote_exact_in(pool, side, size);
                pool = apply_fill(pool, fill);
                CHECK(std::fabs(invariant_residual(pool.rule, sum0, product0, pool.x, pool.y)) <
                      1e-9 * std::max(1.0, sum0));
            }
            if (kind != RuleKind::Mixed) break;
        }
    }
}

TEST_CASE("zero-fee product round trip returns the deposit") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        PoolState pool = random_pool(rng, RuleKind::Product);
        const double dy = uniform(rng, 1e-3, 0.5) * pool.y;
        const Fill out_leg = quote_exact_in(pool, Side::RedeemDomestic, dy);
        const PoolState mid = apply_fill(pool, out_leg);
        const Fill back_leg = quote_exact_in(mid, Side::RedeemForeign, out_leg.amount_out);
        CHECK(back_leg.amount_out == doctest::Approx(dy).epsilon(1e-9));
    }
}

TEST_CASE("fees strictly worsen quotes") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const double s = uniform(rng, 0.5, 2.0);
        const double x0 = uniform(rng, 0.5, 2.0);
        const double y0 = uniform(rng, 0.5, 2.0);
        const RuleKind kind = static_cast<RuleKind>(rng() % 3);
        const double alpha = kind == RuleKind::Mixed ? uniform(rng, 0.0, 50.0) : 0.0;
        const PoolState free_pool = make_pool({kind, alpha, s}, x0, y0, 0.0);
        const PoolState fee_pool = make_pool({kind, alpha, s}, x0, y0, uniform(rng, 1e-5, 1e-2));
        const Side side = rng() % 2 == 0 ? Side::RedeemDomestic : Side::RedeemForeign;
        const double bal = side == Side::RedeemDomestic ? x0 : y0;
        const double size = uniform(rng, 1e-3, 0.4) * bal;
        CHECK(quote_exact_out(fee_pool, side, size).amount_in >
              quote_exact_out(free_pool, side, size).amount_in);
        CHECK(quote_exact_in(fee_pool, side, size).amount_out <
              quote_exact_in(free_pool, side, size).amount_out);
    }
}

TEST_CASE("mixed rule interpolates between product and sum") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 1000; ++i) {
        const double s = uniform(rng, 0.5, 2.0);
        const double x0 = uniform(rng, 0.5, 2.0);
        const double y0 = uniform(rng, 0.5, 2.0);
        const double fee = rng() % 2 == 0 ? 0.0 : 1e-4;
        const PoolState prod = make_pool(product_rule(s), x0, y0, fee);
        const PoolState sum = make_pool(sum_rule(s), x0, y0, fee);
        const PoolState mix0 = make_pool(mixed_rule(0.0, s), x0, y0, fee);
        const PoolState mix_inf = make_pool(mixed_rule(1e6, s), x0, y0, fee);

        const Side side = rng() % 2 == 0 ? Side::RedeemDomestic : Side::RedeemForeign;
        const double bal = side == Side::RedeemDomestic ? x0 : y0;
        const double size = uniform(rng, 1e-3, 0.5) * bal;

        const double p_in = quote_exact_out(prod, side, size).amount_in;
        const double m0_in = quote_exact_out(mix0, side, size).amount_in;
        CHECK(std::fabs(m0_in - p_in) <= 1e-10 * p_in);

        const double s_in = quote_exact_out(sum, side, size).amount_in;
        const double mi_in = quote_exact_out(mix_inf, side, size).amount_in;
        CHECK(std::fabs(mi_in - s_in) <= 1e-4 * s_in);
    }
}

TEST_CASE("mixed residual is symmetric under the balance swap") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const double s = uniform(rng, 0.5, 2.0);
        const double alpha = uniform(rng, 0.0, 100.0);
        const double sum0 = uniform(rng, 1.0, 4.0);
        const double product0 = uniform(rng, 0.5, 2.0);
        const double x = uniform(rng, 0.3, 2.0);
        const double y = uniform(rng, 0.3, 2.0);
        const CfmmRule rule = mixed_rule(alpha, s);
        const double a = invariant_residual(rule, sum0, product0, x, y);
        const double b = invariant_residual(rule, sum0, product0, s * y, x / s);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("larger orders fill at worse rates") {
    std::mt19937_64 rng(29);
    for (RuleKind kind : {RuleKind::Product, RuleKind::Mixed}) {
        for (int i = 0; i < 20; ++i) {
            const PoolState pool = random_pool(rng, kind, 0.0,
                                               kind == RuleKind::Mixed ? uniform(rng, 0.1, 50.0) : 0.0);
            double prev_rate = 1e300;
            for (int k = 1; k <= 10; ++k) {
                const double dy = 0.05 * k * pool.y;
                const double rate = quote_exact_in(pool, Side::RedeemDomestic, dy).amount_out / dy;
                CHECK(rate < prev_rate);
                prev_rate = rate;
            }
        }
    }
}
