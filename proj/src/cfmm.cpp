#include "fxamm/cfmm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fxamm {

namespace {

void check_rule(const CfmmRule& rule) {
    if (!(rule.s > 0.0)) throw std::domain_error("cfmm: equilibrium rate s must be positive");
    if (rule.kind == RuleKind::Mixed && !(rule.alpha >= 0.0))
        throw std::domain_error("cfmm: alpha must be nonnegative");
}

// Positive root of a*t^2 + b*t + c = 0 with a >= 0 and c < 0. The root is
// (-b + sqrt(D)) / (2a); the branch on sign(b) avoids cancellation and stays
// finite as a -> 0, where the equation degenerates to b*t + c = 0. At a = 0
// exactly the first branch evaluates to -c / b with no rounding beyond the
// inputs, so the mixed rule at alpha = 0 reproduces the product rule bit for
// bit.
double positive_quadratic_root(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    const double root = std::sqrt(disc);
    if (b >= 0.0) return -2.0 * c / (b + root);
    return (-b + root) / (2.0 * a);
}

double balance_of(const PoolState& pool, Side side) {
    return side == Side::RedeemDomestic ? pool.x : pool.y;
}

}  // namespace

std::string to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::Sum: return "sum";
        case RuleKind::Product: return "product";
        case RuleKind::Mixed: return "mixed";
    }
    return "?";
}

PoolState make_pool(const CfmmRule& rule, double x0, double y0, double fee) {
    check_rule(rule);
    if (!(x0 > 0.0) || !(y0 > 0.0)) throw std::domain_error("cfmm: initial balances must be positive");
    if (!(fee >= 0.0 && fee < 1.0)) throw std::domain_error("cfmm: fee must lie in [0, 1)");
    PoolState pool;
    pool.x = x0;
    pool.y = y0;
    pool.sum0 = x0 + rule.s * y0;
    pool.product0 = rule.s * x0 * y0;
    pool.fee = fee;
    pool.rule = rule;
    return pool;
}

CurveConstants curve_constants(const PoolState& pool) {
    const double s = pool.rule.s;
    if (pool.rule.kind != RuleKind::Mixed) return {pool.x + s * pool.y, s * pool.x * pool.y};
    // Product-side constant of the mixed curve through (x, y) under the sum0
    // anchor: product = s*x*y * (1 + alpha*((x + s*y)/sum0 - 1)).
    const double g = 1.0 + pool.rule.alpha * ((pool.x + s * pool.y) / pool.sum0 - 1.0);
    if (!(g > 0.0)) throw std::domain_error("cfmm: composition outside the mixed rule's domain");
    return {pool.sum0, s * pool.x * pool.y * g};
}

double invariant_residual(const CfmmRule& rule, double sum0, double product0, double x, double y) {
    check_rule(rule);
    if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("cfmm: balances must be positive");
    const double s = rule.s;
    switch (rule.kind) {
        case RuleKind::Sum:
            return x + s * y - sum0;
        case RuleKind::Product:
            return s * x * y - product0;
        case RuleKind::Mixed:
            return (product0 / (s * x * y) - 1.0) - rule.alpha * ((x + s * y) / sum0 - 1.0);
    }
    throw std::logic_error("cfmm: unknown rule kind");
}

double solve_balance_y(const CfmmRule& rule, double sum0, double product0, double x) {
    check_rule(rule);
    if (!(x > 0.0)) throw std::domain_error("cfmm: known balance must be positive");
    const double s = rule.s;
    switch (rule.kind) {
        case RuleKind::Sum:
            if (x >= sum0) throw std::domain_error("cfmm: balance outside the sum-rule domain");
            return (sum0 - x) / s;
        case RuleKind::Product:
            return product0 / (s * x);
        case RuleKind::Mixed: {
            const double alpha_t = rule.alpha / sum0;
            const double b = (1.0 - rule.alpha) + alpha_t * x;
            const double c = -(product0 / (s * x));
            return positive_quadratic_root(alpha_t * s, b, c);
        }
    }
    throw std::logic_error("cfmm: unknown rule kind");
}

double solve_balance_x(const CfmmRule& rule, double sum0, double product0, double y) {
    check_rule(rule);
    if (!(y > 0.0)) throw std::domain_error("cfmm: known balance must be positive");
    const double s = rule.s;
    switch (rule.kind) {
        case RuleKind::Sum:
            if (s * y >= sum0) throw std::domain_error("cfmm: balance outside the sum-rule domain");
            return sum0 - s * y;
        case RuleKind::Product:
            return product0 / (s * y);
        case RuleKind::Mixed: {
            const double alpha_t = rule.alpha / sum0;
            const double b = (1.0 - rule.alpha) + alpha_t * s * y;
            const double c = -(product0 / (s * y));
            return positive_quadratic_root(alpha_t, b, c);
        }
    }
    throw std::logic_error("cfmm: unknown rule kind");
}

Fill quote_exact_out(const PoolState& pool, Side side, double amount_out) {
    if (!(amount_out > 0.0)) throw std::domain_error("cfmm: amount_out must be positive");
    const double available = balance_of(pool, side);
    if (amount_out >= available)
        throw LiquidityError("cfmm: redemption of " + std::to_string(amount_out) +
                             " exceeds available balance " + std::to_string(available));
    const CurveConstants cc = curve_constants(pool);
    const double keep = 1.0 - pool.fee;
    double amount_in = 0.0;
    if (side == Side::RedeemDomestic) {
        const double y1 = solve_balance_y(pool.rule, cc.sum, cc.product, pool.x - amount_out);
        amount_in = (y1 - pool.y) / keep;
    } else {
        const double x1 = solve_balance_x(pool.rule, cc.sum, cc.product, pool.y - amount_out);
        amount_in = (x1 - pool.x) / keep;
    }
    if (!(amount_in > 0.0)) throw std::domain_error("cfmm: trade too small to price");
    return Fill{side, amount_out, amount_in, pool.fee * amount_in};
}

Fill quote_exact_in(const PoolState& pool, Side side, double amount_in) {
    if (!(amount_in > 0.0)) throw std::domain_error("cfmm: amount_in must be positive");
    const CurveConstants cc = curve_constants(pool);
    const double effective = (1.0 - pool.fee) * amount_in;
    const double s = pool.rule.s;
    if (pool.rule.kind == RuleKind::Sum) {
        // Linear quote; reject before the solve leaves its domain.
        const double implied = side == Side::RedeemDomestic ? s * effective : effective / s;
        if (implied >= balance_of(pool, side))
            throw LiquidityError("cfmm: deposit implies redemption beyond available balance");
    }
    double amount_out = 0.0;
    if (side == Side::RedeemDomestic) {
        const double x1 = solve_balance_x(pool.rule, cc.sum, cc.product, pool.y + effective);
        amount_out = pool.x - x1;
    } else {
        const double y1 = solve_balance_y(pool.rule, cc.sum, cc.product, pool.x + effective);
        amount_out = pool.y - y1;
    }
    if (amount_out >= balance_of(pool, side))
        throw LiquidityError("cfmm: deposit implies redemption beyond available balance");
    if (!(amount_out > 0.0)) throw std::domain_error("cfmm: trade too small to price");
    return Fill{side, amount_out, amount_in, pool.fee * amount_in};
}

PoolState apply_fill(const PoolState& pool, const Fill& fill) {
    if (!(fill.amount_out > 0.0) || !(fill.amount_in > 0.0))
        throw std::domain_error("cfmm: fill amounts must be positive");
    PoolState next = pool;
    if (fill.side == Side::RedeemDomestic) {
        next.x = pool.x - fill.amount_out;
        next.y = pool.y + fill.amount_in;
    } else {
        next.x = pool.x + fill.amount_in;
        next.y = pool.y - fill.amount_out;
    }
    if (!(next.x > 0.0) || !(next.y > 0.0))
        throw LiquidityError("cfmm: fill drains a pool balance");
    return next;
}

double marginal_rate(const PoolState& pool) {
    if (!(pool.x > 0.0) || !(pool.y > 0.0))
        throw std::domain_error("cfmm: balances must be positive");
    const double s = pool.rule.s;
    switch (pool.rule.kind) {
        case RuleKind::Sum:
            return s;
        case RuleKind::Product:
            return pool.x / pool.y;
        case RuleKind::Mixed: {
            // -dx/dy of the quoting curve at (x, y); g is the ratio of that
            // curve's product constant to s*x*y.
            const double alpha = pool.rule.alpha;
            const double g = 1.0 + alpha * ((pool.x + s * pool.y) / pool.sum0 - 1.0);
            if (!(g > 0.0))
                throw std::domain_error("cfmm: composition outside the mixed rule's domain");
            return (g / pool.y + alpha * s / pool.sum0) / (g / pool.x + alpha / pool.sum0);
        }
    }
    throw std::logic_error("cfmm: unknown rule kind");
}

}  // namespace fxamm
