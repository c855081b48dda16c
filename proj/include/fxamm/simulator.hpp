#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fxamm/arbitrage.hpp"
#include "fxamm/cfmm.hpp"
#include "fxamm/market_data.hpp"

namespace fxamm {

// Session simulation knobs. The pool is re-created per session at balances
// (liquidity_multiple, liquidity_multiple) with s = 1; since session volumes
// carry unit mass, turnover is 1 / liquidity_multiple.
struct SimConfig {
    CfmmRule rule{mixed_rule(5.0)};
    double fee{1e-4};                // client pool fee
    double arb_fee{1e-4};            // arbitrageur pool fee
    double liquidity_multiple{1.0};
    bool arb_enabled{true};
    ArbConfig arb{};                 // solver settings; arb.arb_fee is overridden by arb_fee
    bool sequential_fills{false};    // quote client orders one after the other instead of jointly
    bool record_steps{false};
};

// One minute of simulation output. The two client fills are quoted against
// the previous minute's pool state: the foreign redemption takes out_foreign
// (= v_bid) against a deposit of in_domestic, the domestic redemption takes
// out_domestic (= v_ask) against in_foreign. Rates are NaN when the driving
// volume is zero.
struct StepRecord {
    int index{0};
    double p_mid{0.0};
    double x{0.0}, y{0.0};  // balances after client fills and arbitrage
    double out_foreign{0.0}, in_domestic{0.0};
    double out_domestic{0.0}, in_foreign{0.0};
    double rate_bid{std::numeric_limits<double>::quiet_NaN()};
    double rate_ask{std::numeric_limits<double>::quiet_NaN()};
    double spread_bid{0.0}, spread_ask{0.0};
    ArbDirection arb_dir{ArbDirection::None};
    double arb_in{0.0}, arb_out{0.0};
    double arb_profit{0.0};  // valued at this minute's mid
    double fee_value{0.0};   // client fees this minute, valued at this minute's mid
};

struct SessionResult {
    double spread_bp{0.0};
    double arb_pnl{0.0};
    double fees{0.0};
    double lp_pnl{0.0};
    double lp_pnl_hedged{0.0};
    double final_x{0.0}, final_y{0.0};
    double p_close{0.0};
    std::vector<StepRecord> steps;  // populated when SimConfig::record_steps
};

PoolState init_pool(const SimConfig& cfg);

// Advances the pool by one minute: client orders sized by bar's volumes and
// quoted against the incoming (lagged) state, then the arbitrage sized
// against prev's mid and valued at bar's mid.
std::pair<PoolState, StepRecord> step(const PoolState& pool, const NormalizedBar& bar,
                                      const NormalizedBar& prev, const SimConfig& cfg);

// Full intraday loop plus end-of-session metrics. The first bar serves as its
// own lag.
SessionResult run_session(const Session& session, const SimConfig& cfg);

struct SessionOutcome {
    std::optional<SessionResult> result;
    std::string error;  // nonempty when the session failed
};

// Evaluates sessions independently; output order matches input order for any
// thread count. Per-session failures are recorded, not fatal.
std::vector<SessionOutcome> run_batch(const std::vector<Session>& sessions, const SimConfig& cfg,
                                      int threads = 1);

}  // namespace fxamm
