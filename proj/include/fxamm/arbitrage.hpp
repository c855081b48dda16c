#pragma once

#include <utility>

#include "fxamm/cfmm.hpp"

namespace fxamm {

// One-sided rebalancing trade against an external mid price. BuyDomestic
// deposits foreign tokens and redeems domestic; BuyForeign is the mirror.
enum class ArbDirection { None, BuyDomestic, BuyForeign };

struct ArbConfig {
    double arb_fee{0.0};      // pool fee charged to the arbitrageur
    double newton_tol{1e-12}; // convergence tolerance on the Newton step
    int max_iters{20};
    int oracle_grid{4096};    // grid points of the brute-force optimizer
};

struct ArbSolution {
    ArbDirection direction{ArbDirection::None};
    double trade_in{0.0};     // deposited amount (foreign for BuyDomestic)
    double trade_out{0.0};    // matched redemption from the pool
    double profit{0.0};       // P&L at the price the trade was sized against
    int newton_iterations{0};
};

// P&L of a one-sided trade of size trade_in at pool fee arb_fee, marking the
// off-pool leg at fx_mid. Zero trade yields zero.
double arb_profit(const PoolState& pool, ArbDirection direction, double trade_in,
                  double fx_mid, double arb_fee);

// Closed-form optimum for the product rule.
ArbSolution optimal_arb_product(const PoolState& pool, double fx_mid, double arb_fee);

// Interval of external mids admitting no profitable trade:
// [(1 - fee) * m, m / (1 - fee)] around the pool's marginal rate m. For the
// product rule these are exactly the sign-change points of the closed-form
// trade sizes.
std::pair<double, double> no_arb_band(const PoolState& pool, double arb_fee);

// Newton-Raphson optimum for the mixed rule, using analytic first and second
// derivatives of the counterparty-balance closed form. Works for alpha = 0,
// where it reproduces the product-rule optimum.
ArbSolution optimal_arb_mixed(const PoolState& pool, double fx_mid, const ArbConfig& cfg);

// Dispatch on the pool's rule. The sum rule has a size-independent marginal
// profit, so a profitable direction is traded at a 90%-of-balance cap.
ArbSolution optimal_arb(const PoolState& pool, double fx_mid, const ArbConfig& cfg);

// Brute-force reference: evaluates the profit on a uniform grid of deposit
// sizes in both directions, capped so the redemption stays at or below 90% of
// the outgoing balance. Test/validation use only.
ArbSolution oracle_arb_grid(const PoolState& pool, double fx_mid, double arb_fee, int grid);

// Upper end of the oracle's grid for one direction: the deposit that redeems
// 90% of the outgoing balance.
double oracle_arb_cap(const PoolState& pool, ArbDirection direction, double arb_fee);

// Uniform-grid scan of one direction over [lo, hi]; refinement helper for the
// oracle's argmax in tests.
std::pair<double, double> oracle_arb_window(const PoolState& pool, double fx_mid, double arb_fee,
                                            ArbDirection direction, double lo, double hi, int points);

}  // namespace fxamm
