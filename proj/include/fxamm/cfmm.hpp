#pragma once

#include <string>

#include "fxamm/errors.hpp"

namespace fxamm {

// Which conservation function governs the pool.
enum class RuleKind { Sum, Product, Mixed };

std::string to_string(RuleKind kind);

// Pricing rule of a two-token pool. `s` is the equilibrium conversion rate of
// foreign tokens into domestic tokens embedded in the invariant; `alpha`
// blends the sum and product terms of the mixed rule (alpha = 0 collapses to
// the pure product rule, large alpha approaches the sum rule).
struct CfmmRule {
    RuleKind kind{RuleKind::Product};
    double alpha{0.0};
    double s{1.0};
};

inline CfmmRule sum_rule(double s = 1.0) { return {RuleKind::Sum, 0.0, s}; }
inline CfmmRule product_rule(double s = 1.0) { return {RuleKind::Product, 0.0, s}; }
inline CfmmRule mixed_rule(double alpha, double s = 1.0) { return {RuleKind::Mixed, alpha, s}; }

// Immutable snapshot of a pool. `x` is the domestic-token balance, `y` the
// foreign-token balance. `sum0`/`product0` are the composition constants
// x0 + s*y0 and s*x0*y0 fixed at creation; trades never mutate them. Quotes
// are solved on the invariant curve through the current composition, so fee
// income accrues to the balances and the pool drifts above the creation
// curve.
struct PoolState {
    double x{0.0};
    double y{0.0};
    double sum0{0.0};
    double product0{0.0};
    double fee{0.0};
    CfmmRule rule{};
};

// Builds a pool from initial balances; composition constants derived from
// (x0, y0).
PoolState make_pool(const CfmmRule& rule, double x0, double y0, double fee);

// Which token leaves the pool in a trade.
enum class Side { RedeemDomestic, RedeemForeign };

// One executed (or quoted) trade. `amount_in` is the full pre-fee deposit the
// trader supplies; `fee_paid` = fee * amount_in in deposited-token units.
struct Fill {
    Side side{Side::RedeemDomestic};
    double amount_out{0.0};
    double amount_in{0.0};
    double fee_paid{0.0};
};

// F(x, y) for the given rule and composition constants; zero means (x, y)
// lies on the invariant curve.
double invariant_residual(const CfmmRule& rule, double sum0, double product0, double x, double y);

// Unique positive y with invariant_residual(rule, sum0, product0, x, y) = 0.
double solve_balance_y(const CfmmRule& rule, double sum0, double product0, double x);

// Unique positive x with invariant_residual(rule, sum0, product0, x, y) = 0.
double solve_balance_x(const CfmmRule& rule, double sum0, double product0, double y);

// Deposit required to redeem exactly `amount_out` from the given side.
Fill quote_exact_out(const PoolState& pool, Side side, double amount_out);

// Redemption obtained for depositing exactly `amount_in` on the opposite
// side. Only (1 - fee) * amount_in counts toward the invariant.
Fill quote_exact_in(const PoolState& pool, Side side, double amount_in);

// Applies a fill: the out side loses amount_out, the in side gains the full
// amount_in (fee tokens stay in the pool). Returns the new state.
PoolState apply_fill(const PoolState& pool, const Fill& fill);

// Fee-free exchange rate for an infinitesimal trade at the current balances,
// in domestic per foreign. Identical for both trade directions.
double marginal_rate(const PoolState& pool);

// Constants of the invariant curve the pool currently quotes on. Sum and
// product rules rebuild their running constant from the live balances. The
// mixed rule keeps sum0 as its fixed shape anchor and rebuilds only the
// product-side constant, so the curve passes through the current composition;
// zero-fee trades stay on the creation curve while fee income compounds.
struct CurveConstants {
    double sum{0.0};
    double product{0.0};
};
CurveConstants curve_constants(const PoolState& pool);

}  // namespace fxamm
