#include <cmath>
#include <random>

#include "doctest.h"
#include "fxamm/arbitrage.hpp"
#include "helpers.hpp"

using namespace fxamm;
using fxamm::testing::random_pool;
using fxamm::testing::uniform;

namespace {

// Coarse oracle pass plus a fine uniform grid around its argmax. When the
// coarse grid is too wide to see a tiny optimum, the window falls back to the
// solver's claimed trade so the fine grid still checks it independently.
ArbSolution refined_oracle(const PoolState& pool, double fx_mid, double arb_fee,
                           const ArbSolution& hint, int coarse_grid = 4096,
                           double fine_step = 1e-7) {
    const ArbSolution coarse = oracle_arb_grid(pool, fx_mid, arb_fee, coarse_grid);
    ArbDirection dir = coarse.direction;
    double center = coarse.trade_in;
    if (dir == ArbDirection::None) {
        if (hint.direction == ArbDirection::None) return coarse;
        dir = hint.direction;
        center = hint.trade_in;
    }
    const double h = oracle_arb_cap(pool, dir, arb_fee) / coarse_grid;
    const double lo = std::max(fine_step, center - h);
    const double hi = center + h;
    const int points = static_cast<int>((hi - lo) / fine_step) + 2;
    const auto [best_in, best_profit] = oracle_arb_window(pool, fx_mid, arb_fee, dir, lo, hi, points);
    ArbSolution out;
    if (best_profit > 0.0) {
        out.direction = dir;
        out.trade_in = best_in;
        out.profit = best_profit;
    }
    return out;
}

}  // namespace

TEST_CASE("arb profit basics") {
    const PoolState pool = make_pool(product_rule(1.0), 1.0, 1.0, 0.0);
    CHECK(arb_profit(pool, ArbDirection::BuyDomestic, 0.0, 0.9, 0.0) == 0.0);
    CHECK_THROWS_AS(arb_profit(pool, ArbDirection::BuyDomestic, -1.0, 0.9, 0.0), std::domain_error);

    // Expected value frozen from the closed-form optimum, cross-checked by
    // the grid oracle below.
    const double omega = arb_profit(pool, ArbDirection::BuyDomestic, 0.0540926, 0.9, 0.0);
    CHECK(omega == doctest::Approx(0.0026334).epsilon(1e-4));

    // At the fair price with a fee, every round trip loses money.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const PoolState p = random_pool(rng, RuleKind::Product);
        const double fair = p.x / p.y;
        const double trade = uniform(rng, 1e-3, 0.5);
        CHECK(arb_profit(p, ArbDirection::BuyDomestic, trade, fair, 1e-4) < 0.0);
        CHECK(arb_profit(p, ArbDirection::BuyForeign, trade, fair, 1e-4) < 0.0);
    }
}

TEST_CASE("product closed form") {
    const PoolState pool = make_pool(product_rule(1.0), 1.0, 1.0, 0.0);

    CHECK(optimal_arb_product(pool, 1.0, 0.0).direction == ArbDirection::None);

    const ArbSolution sol = optimal_arb_product(pool, 0.9, 0.0);
    CHECK(sol.direction == ArbDirection::BuyDomestic);
    CHECK(sol.trade_in == doctest::Approx(std::sqrt(1.0 / 0.9) - 1.0).epsilon(1e-12));
    CHECK(sol.profit == doctest::Approx(0.0026334038989724).epsilon(1e-9));

    const PoolState after = apply_fill(pool, Fill{Side::RedeemDomestic, sol.trade_out,
                                                  sol.trade_in, 0.0});
    CHECK(marginal_rate(after) == doctest::Approx(0.9).epsilon(1e-12));

    CHECK(optimal_arb_product(pool, 1.0, 1e-4).direction == ArbDirection::None);
}

TEST_CASE("no-arbitrage band") {
    const PoolState pool = make_pool(product_rule(1.0), 1.0, 1.0, 0.0);
    auto [lo0, hi0] = no_arb_band(pool, 0.0);
    CHECK(lo0 == 1.0);
    CHECK(hi0 == 1.0);

    auto [lo, hi] = no_arb_band(pool, 1e-4);
    CHECK(lo == doctest::Approx(0.9999).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.00010001).epsilon(1e-9));

    // Direction flips exactly at the band edges.
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const PoolState p = random_pool(rng, RuleKind::Product);
        const double fee = uniform(rng, 0.0, 5e-4);
        auto [lower, upper] = no_arb_band(p, fee);
        CHECK(optimal_arb_product(p, lower * (1.0 - 1e-9), fee).direction ==
              ArbDirection::BuyDomestic);
        CHECK(optimal_arb_product(p, lower * (1.0 + 1e-9), fee).direction == ArbDirection::None);
        CHECK(optimal_arb_product(p, upper * (1.0 - 1e-9), fee).direction == ArbDirection::None);
        CHECK(optimal_arb_product(p, upper * (1.0 + 1e-9), fee).direction ==
              ArbDirection::BuyForeign);
    }
}

TEST_CASE("mixed newton solver") {
    // alpha = 0 reproduces the product closed form.
    {
        const PoolState mix = make_pool(mixed_rule(0.0, 1.0), 1.0, 1.0, 0.0);
        const PoolState prod = make_pool(product_rule(1.0), 1.0, 1.0, 0.0);
        ArbConfig cfg;
        for (double p : {0.9, 0.97, 1.02, 1.2}) {
            const ArbSolution a = optimal_arb_mixed(mix, p, cfg);
            const ArbSolution b = optimal_arb_product(prod, p, 0.0);
            CHECK(a.direction == b.direction);
            CHECK(std::fabs(a.trade_in - b.trade_in) < 1e-8);
            CHECK(std::fabs(a.profit - b.profit) < 1e-8);
        }
    }

    // Sized example against the refined grid oracle.
    {
        const PoolState pool = make_pool(mixed_rule(5.0, 1.0), 1.0, 1.0, 0.0);
        ArbConfig cfg;
        const ArbSolution newton = optimal_arb_mixed(pool, 0.98, cfg);
        const ArbSolution oracle = refined_oracle(pool, 0.98, 0.0, newton, 4096, 1e-7);
        CHECK(newton.direction == ArbDirection::BuyDomestic);
        CHECK(oracle.direction == ArbDirection::BuyDomestic);
        CHECK(std::fabs(newton.trade_in - oracle.trade_in) < 1e-6);
        CHECK(newton.profit >= oracle.profit - 1e-10);
    }

    // Inside the band with a fee there is no trade.
    {
        const PoolState pool = make_pool(mixed_rule(5.0, 1.0), 1.0, 1.0, 0.0);
        ArbConfig cfg;
        cfg.arb_fee = 1e-4;
        const ArbSolution sol = optimal_arb_mixed(pool, 1.0, cfg);
        CHECK(sol.direction == ArbDirection::None);
        CHECK(sol.profit == 0.0);
    }
}

TEST_CASE("newton converges on randomized mixed pools") {
    std::mt19937_64 rng(9);
    ArbConfig cfg;  // tol 1e-12, 20 iterations
    for (int i = 0; i < 200; ++i) {
        const double alpha = uniform(rng, 0.0, 100.0);
        const PoolState pool = random_pool(rng, RuleKind::Mixed, 0.0, alpha);
        const double fair = marginal_rate(pool);
        const double p = fair * (1.0 + uniform(rng, -0.05, 0.05));
        cfg.arb_fee = rng() % 2 == 0 ? 0.0 : 1e-4;
        const ArbSolution sol = optimal_arb_mixed(pool, p, cfg);
        CHECK(sol.newton_iterations <= 20);
        if (sol.direction == ArbDirection::None) continue;
        CHECK(sol.profit >= 0.0);
        const ArbSolution oracle = refined_oracle(pool, p, cfg.arb_fee, sol, 2048, 1e-7);
        CHECK(sol.direction == oracle.direction);
        CHECK(std::fabs(sol.trade_in - oracle.trade_in) < 2e-6);
        CHECK(sol.profit >= oracle.profit - 1e-10);
    }
}

TEST_CASE("solver beats every oracle grid point") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 100; ++i) {
        const PoolState pool = random_pool(rng, RuleKind::Product);
        const double p = marginal_rate(pool) * (1.0 + uniform(rng, -0.05, 0.05));
        const double fee = uniform(rng, 0.0, 2e-4);
        const ArbSolution sol = optimal_arb_product(pool, p, fee);
        const ArbSolution oracle = oracle_arb_grid(pool, p, fee, 1000);
        if (sol.direction == ArbDirection::None) {
            CHECK(oracle.profit <= 1e-12);
        } else {
            CHECK(sol.profit >= oracle.profit - 1e-10);
        }
    }
}

TEST_CASE("at most one direction is profitable") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        const PoolState pool = random_pool(rng, RuleKind::Product);
        const double p = marginal_rate(pool) * (1.0 + uniform(rng, -0.2, 0.2));
        const double fee = uniform(rng, 0.0, 1e-3);
        const CurveConstants cc = curve_constants(pool);
        const double keep = 1.0 - fee;
        const double dy = std::sqrt(cc.product / (pool.rule.s * keep * p)) - pool.y / keep;
        const double dx = std::sqrt(p * cc.product / (pool.rule.s * keep)) - pool.x / keep;
        CHECK_FALSE((dy > 0.0 && dx > 0.0));
    }
}

TEST_CASE("sum-rule dispatch trades the cap in a profitable direction") {
    const PoolState pool = make_pool(sum_rule(1.25), 1000.0, 1000.0, 0.0);
    ArbConfig cfg;
    cfg.arb_fee = 1e-4;

    const ArbSolution none = optimal_arb(pool, 1.25, cfg);
    CHECK(none.direction == ArbDirection::None);

    const ArbSolution buy_dom = optimal_arb(pool, 1.0, cfg);
    CHECK(buy_dom.direction == ArbDirection::BuyDomestic);
    CHECK(buy_dom.trade_out == doctest::Approx(0.9 * pool.x).epsilon(1e-12));
    CHECK(buy_dom.profit > 0.0);

    const ArbSolution buy_for = optimal_arb(pool, 1.5, cfg);
    CHECK(buy_for.direction == ArbDirection::BuyForeign);
    CHECK(buy_for.trade_out == doctest::Approx(0.9 * pool.y).epsilon(1e-12));
    CHECK(buy_for.profit > 0.0);
}
