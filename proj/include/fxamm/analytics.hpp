#pragma once

#include <utility>
#include <vector>

#include "fxamm/simulator.hpp"

namespace fxamm {

inline constexpr double kTradingDaysPerYear = 260.0;

// The four per-session headline variables; P&L figures scaled to annual by
// 260 trading days, spread passed through unscaled.
struct KeyVariables {
    double spread_bp{0.0};
    double arb_pnl_annual{0.0};
    double lp_pnl_annual{0.0};
    double lp_pnl_hedged_annual{0.0};
};

std::vector<KeyVariables> annualize(const std::vector<SessionResult>& results);

// Boxplot-style summary: median and median absolute deviation, quartiles by
// linear interpolation, whiskers at 1.5 IQR clipped to the data range.
struct DistStats {
    double median{0.0};
    double mad{0.0};
    double q1{0.0}, q2{0.0}, q3{0.0};
    double whisker_lo{0.0}, whisker_hi{0.0};
    int count{0};
};

DistStats dist_stats(std::vector<double> values);

enum class SweepAxis { Alpha, Fee, LiquidityMultiple };

struct SweepRow {
    double value{0.0};
    DistStats spread_bp;
    DistStats arb_pnl_annual;
    DistStats lp_pnl_annual;
    DistStats lp_pnl_hedged_annual;
};

// Re-runs the batch once per axis value over a fixed session set and
// tabulates the distribution of each key variable. Alpha values select the
// mixed rule; fee and liquidity values override the base config.
std::vector<SweepRow> sweep(const std::vector<Session>& sessions, const SimConfig& base,
                            SweepAxis axis, const std::vector<double>& values, int threads = 1);

// Which per-minute volume series defines the intraday volume variance.
enum class VolVarMode { NetDiff, Sum, BidOnly, AskOnly };

struct RegressionResult {
    double beta_return{0.0};
    double beta_volvar{0.0};
    double intercept{0.0};
    double r_squared{0.0};
};

double session_return(const Session& session);
double volume_variance(const Session& session, VolVarMode mode = VolVarMode::NetDiff);

// OLS of daily P&L on the session return and the intraday volume variance,
// for the plain and the hedged P&L. Throws std::domain_error when a regressor
// is constant (rank deficiency).
std::pair<RegressionResult, RegressionResult> regress_pnl(
    const std::vector<SessionResult>& results, const std::vector<Session>& sessions,
    VolVarMode mode = VolVarMode::NetDiff);

}  // namespace fxamm
