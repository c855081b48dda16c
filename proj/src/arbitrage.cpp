#include "fxamm/arbitrage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fxamm {

namespace {

PoolState with_fee(const PoolState& pool, double fee) {
    PoolState p = pool;
    p.fee = fee;
    return p;
}

// First and second derivatives of the mixed-rule counterparty balances,
// obtained by differentiating the closed-form positive root. alpha_t is
// alpha / sum_c. All reduce exactly to the product-rule expressions at
// alpha = 0.
struct MixedCurve {
    double s;
    double alpha;
    double alpha_t;
    double product;

    explicit MixedCurve(const PoolState& pool) {
        const CurveConstants cc = curve_constants(pool);
        s = pool.rule.s;
        alpha = pool.rule.kind == RuleKind::Mixed ? pool.rule.alpha : 0.0;
        alpha_t = alpha / cc.sum;
        product = cc.product;
    }

    // x1(y): domestic balance on the curve for a given foreign balance.
    double x_of_y(double y) const {
        const double b = (1.0 - alpha) + alpha_t * s * y;
        const double d = b * b + 4.0 * alpha_t * product / (s * y);
        const double r = std::sqrt(d);
        if (b >= 0.0) return 2.0 * product / (s * y * (b + r));
        return (-b + r) / (2.0 * alpha_t);
    }

    double dx_dy(double y) const {
        const double b = (1.0 - alpha) + alpha_t * s * y;
        const double d = b * b + 4.0 * alpha_t * product / (s * y);
        const double r = std::sqrt(d);
        const double q = s * b - 2.0 * product / (s * y * y);
        return 0.5 * (-s + q / r);
    }

    double d2x_dy2(double y) const {
        const double b = (1.0 - alpha) + alpha_t * s * y;
        const double d = b * b + 4.0 * alpha_t * product / (s * y);
        const double r = std::sqrt(d);
        const double q = s * b - 2.0 * product / (s * y * y);
        return (alpha_t * s * s + 4.0 * product / (s * y * y * y) - alpha_t * q * q / d) / (2.0 * r);
    }

    // y1(x): foreign balance on the curve for a given domestic balance.
    double y_of_x(double x) const {
        const double b = (1.0 - alpha) + alpha_t * x;
        const double d = b * b + 4.0 * alpha_t * product / x;
        const double r = std::sqrt(d);
        if (b >= 0.0) return 2.0 * product / (s * x * (b + r));
        return (-b + r) / (2.0 * alpha_t * s);
    }

    double dy_dx(double x) const {
        const double b = (1.0 - alpha) + alpha_t * x;
        const double d = b * b + 4.0 * alpha_t * product / x;
        const double r = std::sqrt(d);
        const double q = b - 2.0 * product / (x * x);
        return (-1.0 + q / r) / (2.0 * s);
    }

    double d2y_dx2(double x) const {
        const double b = (1.0 - alpha) + alpha_t * x;
        const double d = b * b + 4.0 * alpha_t * product / x;
        const double r = std::sqrt(d);
        const double q = b - 2.0 * product / (x * x);
        return (alpha_t + 4.0 * product / (x * x * x) - alpha_t * q * q / d) / (2.0 * s * r);
    }
};

ArbSolution finish_solution(const PoolState& pool, ArbDirection direction, double trade_in,
                            double fx_mid, double arb_fee, int iterations) {
    ArbSolution sol;
    sol.newton_iterations = iterations;
    if (!(trade_in > 0.0)) return sol;
    const Side side = direction == ArbDirection::BuyDomestic ? Side::RedeemDomestic
                                                             : Side::RedeemForeign;
    Fill fill;
    try {
        fill = quote_exact_in(with_fee(pool, arb_fee), side, trade_in);
    } catch (const std::domain_error&) {
        // Below pricing resolution; economically a zero trade.
        return sol;
    }
    sol.direction = direction;
    sol.trade_in = trade_in;
    sol.trade_out = fill.amount_out;
    sol.profit = direction == ArbDirection::BuyDomestic
                     ? fill.amount_out - fx_mid * trade_in
                     : fx_mid * fill.amount_out - trade_in;
    return sol;
}

}  // namespace

double oracle_arb_cap(const PoolState& pool, ArbDirection direction, double arb_fee) {
    const Side side = direction == ArbDirection::BuyDomestic ? Side::RedeemDomestic
                                                             : Side::RedeemForeign;
    const double out_balance = side == Side::RedeemDomestic ? pool.x : pool.y;
    return quote_exact_out(with_fee(pool, arb_fee), side, 0.9 * out_balance).amount_in;
}

double arb_profit(const PoolState& pool, ArbDirection direction, double trade_in,
                  double fx_mid, double arb_fee) {
    if (trade_in < 0.0) throw std::domain_error("arb: trade size must be nonnegative");
    if (!(fx_mid > 0.0)) throw std::domain_error("arb: fx mid must be positive");
    if (trade_in == 0.0 || direction == ArbDirection::None) return 0.0;
    const Side side = direction == ArbDirection::BuyDomestic ? Side::RedeemDomestic
                                                             : Side::RedeemForeign;
    const Fill fill = quote_exact_in(with_fee(pool, arb_fee), side, trade_in);
    return direction == ArbDirection::BuyDomestic ? fill.amount_out - fx_mid * trade_in
                                                  : fx_mid * fill.amount_out - trade_in;
}

namespace {

ArbSolution closed_form_product(const PoolState& pool, double fx_mid, double arb_fee) {
    if (!(fx_mid > 0.0)) throw std::domain_error("arb: fx mid must be positive");
    const CurveConstants cc = curve_constants(pool);
    const double s = pool.rule.s;
    const double keep = 1.0 - arb_fee;
    const double dy_star = std::sqrt(cc.product / (s * keep * fx_mid)) - pool.y / keep;
    if (dy_star > 0.0)
        return finish_solution(pool, ArbDirection::BuyDomestic, dy_star, fx_mid, arb_fee, 0);
    const double dx_star = std::sqrt(fx_mid * cc.product / (s * keep)) - pool.x / keep;
    if (dx_star > 0.0)
        return finish_solution(pool, ArbDirection::BuyForeign, dx_star, fx_mid, arb_fee, 0);
    return {};
}

}  // namespace

ArbSolution optimal_arb_product(const PoolState& pool, double fx_mid, double arb_fee) {
    if (pool.rule.kind != RuleKind::Product)
        throw std::domain_error("arb: closed form requires the product rule");
    return closed_form_product(pool, fx_mid, arb_fee);
}

std::pair<double, double> no_arb_band(const PoolState& pool, double arb_fee) {
    const double m = marginal_rate(pool);
    const double keep = 1.0 - arb_fee;
    return {keep * m, m / keep};
}

ArbSolution optimal_arb_mixed(const PoolState& pool, double fx_mid, const ArbConfig& cfg) {
    if (pool.rule.kind != RuleKind::Mixed)
        throw std::domain_error("arb: newton solver requires the mixed rule");
    if (!(fx_mid > 0.0)) throw std::domain_error("arb: fx mid must be positive");
    const double keep = 1.0 - cfg.arb_fee;
    const MixedCurve curve(pool);
    const double m = marginal_rate(pool);

    // First-order conditions: depositing foreign is profitable at the margin
    // iff fx_mid < (1 - fee) * m, depositing domestic iff fx_mid > m / (1 - fee).
    ArbDirection direction = ArbDirection::None;
    if (fx_mid < keep * m) direction = ArbDirection::BuyDomestic;
    else if (fx_mid > m / keep) direction = ArbDirection::BuyForeign;
    if (direction == ArbDirection::None) return {};

    // Newton on the stationarity condition in log-log form: the residual is
    // ln(curve slope) minus ln(target rate), stepped in the log of the
    // post-trade effective balance. For alpha = 0 the residual is linear in
    // the log balance, and the compression keeps high-alpha curves (whose
    // slope collapses over a short balance range) well conditioned. Iterates
    // that leave the enclosing bracket are projected to its geometric mean.
    const bool buy_domestic = direction == ArbDirection::BuyDomestic;
    const double start = buy_domestic ? pool.y : pool.x;
    const double target = buy_domestic ? std::log(fx_mid / keep) : -std::log(fx_mid * keep);
    auto residual = [&](double t) {
        const double slope = buy_domestic ? -curve.dx_dy(t) : -curve.dy_dx(t);
        return std::log(slope) - target;
    };
    auto dresidual_dlog = [&](double t) {  // d residual / d ln(t)
        return buy_domestic ? t * curve.d2x_dy2(t) / curve.dx_dy(t)
                            : t * curve.d2y_dx2(t) / curve.dy_dx(t);
    };

    double lo = start;  // residual(lo) > 0 by the direction check
    double hi = start;
    for (int k = 0; k < 200 && !(residual(hi) < 0.0); ++k) hi *= 2.0;
    if (!(residual(hi) < 0.0)) throw ConvergenceError("arb: failed to bracket the optimum");

    double t = start;
    int iters = 0;
    bool converged = false;
    for (; iters < cfg.max_iters; ++iters) {
        const double rt = residual(t);
        if (rt > 0.0) lo = t; else hi = t;
        double next = t * std::exp(-rt / dresidual_dlog(t));
        if (std::fabs(next - t) <= cfg.newton_tol * std::max(1.0, std::fabs(t))) {
            t = next;
            ++iters;
            converged = true;
            break;
        }
        if (!(next > lo) || !(next < hi)) next = std::sqrt(lo * hi);
        t = next;
    }
    if (!converged)
        throw ConvergenceError("arb: newton did not converge in " +
                               std::to_string(cfg.max_iters) + " iterations");

    const double trade_in = (t - start) / keep;
    if (!(trade_in > 0.0)) return {};  // unconstrained optimum at or below zero
    return finish_solution(pool, direction, trade_in, fx_mid, cfg.arb_fee, iters);
}

ArbSolution optimal_arb(const PoolState& pool, double fx_mid, const ArbConfig& cfg) {
    switch (pool.rule.kind) {
        case RuleKind::Product:
            return closed_form_product(pool, fx_mid, cfg.arb_fee);
        case RuleKind::Mixed:
            // At alpha exactly zero the mixed curve is the product curve; the
            // closed form keeps the reduction bit-exact.
            if (pool.rule.alpha == 0.0) return closed_form_product(pool, fx_mid, cfg.arb_fee);
            return optimal_arb_mixed(pool, fx_mid, cfg);
        case RuleKind::Sum: {
            // Profit is linear in size, so any profitable direction is traded
            // at the oracle's 90%-of-balance cap.
            const auto [lower, upper] = no_arb_band(pool, cfg.arb_fee);
            if (fx_mid < lower) {
                const double cap = oracle_arb_cap(pool, ArbDirection::BuyDomestic, cfg.arb_fee);
                return finish_solution(pool, ArbDirection::BuyDomestic, cap, fx_mid, cfg.arb_fee, 0);
            }
            if (fx_mid > upper) {
                const double cap = oracle_arb_cap(pool, ArbDirection::BuyForeign, cfg.arb_fee);
                return finish_solution(pool, ArbDirection::BuyForeign, cap, fx_mid, cfg.arb_fee, 0);
            }
            return {};
        }
    }
    throw std::logic_error("arb: unknown rule kind");
}

std::pair<double, double> oracle_arb_window(const PoolState& pool, double fx_mid, double arb_fee,
                                            ArbDirection direction, double lo, double hi, int points) {
    if (points < 2) throw std::domain_error("arb: oracle needs at least two grid points");
    double best_in = 0.0;
    double best_profit = 0.0;
    for (int i = 0; i < points; ++i) {
        const double trade = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        if (!(trade > 0.0)) continue;
        double profit;
        try {
            profit = arb_profit(pool, direction, trade, fx_mid, arb_fee);
        } catch (const std::domain_error&) {
            continue;
        }
        if (profit > best_profit) {
            best_profit = profit;
            best_in = trade;
        }
    }
    return {best_in, best_profit};
}

ArbSolution oracle_arb_grid(const PoolState& pool, double fx_mid, double arb_fee, int grid) {
    if (grid < 2) throw std::domain_error("arb: oracle grid must have at least two points");
    ArbDirection best_dir = ArbDirection::None;
    double best_in = 0.0;
    double best_profit = 0.0;
    for (ArbDirection dir : {ArbDirection::BuyDomestic, ArbDirection::BuyForeign}) {
        const double cap = oracle_arb_cap(pool, dir, arb_fee);
        const auto [trade, profit] = oracle_arb_window(pool, fx_mid, arb_fee, dir,
                                                       cap / grid, cap, grid);
        if (profit > best_profit) {
            best_profit = profit;
            best_in = trade;
            best_dir = dir;
        }
    }
    if (best_dir == ArbDirection::None) return {};
    return finish_solution(pool, best_dir, best_in, fx_mid, arb_fee, 0);
}

}  // namespace fxamm
