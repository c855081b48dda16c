#include "fxamm/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fxamm {

namespace {

// Linear-interpolation quantile of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Alpha: return "alpha";
        case SweepAxis::Fee: return "fee";
        case SweepAxis::LiquidityMultiple: return "liquidity";
    }
    return "?";
}

}  // namespace

std::vector<KeyVariables> annualize(const std::vector<SessionResult>& results) {
    if (results.empty()) throw std::domain_error("analytics: no results to annualize");
    std::vector<KeyVariables> out;
    out.reserve(results.size());
    for (const SessionResult& r : results) {
        out.push_back({r.spread_bp, kTradingDaysPerYear * r.arb_pnl,
                       kTradingDaysPerYear * r.lp_pnl, kTradingDaysPerYear * r.lp_pnl_hedged});
    }
    return out;
}

DistStats dist_stats(std::vector<double> values) {
    if (values.empty()) throw std::domain_error("analytics: empty sample");
    std::sort(values.begin(), values.end());

    DistStats st;
    st.count = static_cast<int>(values.size());
    st.q1 = quantile_sorted(values, 0.25);
    st.q2 = quantile_sorted(values, 0.50);
    st.q3 = quantile_sorted(values, 0.75);
    st.median = st.q2;

    std::vector<double> dev(values.size());
    for (size_t i = 0; i < values.size(); ++i) dev[i] = std::fabs(values[i] - st.median);
    std::sort(dev.begin(), dev.end());
    st.mad = quantile_sorted(dev, 0.50);

    const double iqr = st.q3 - st.q1;
    const double lo_fence = st.q1 - 1.5 * iqr;
    const double hi_fence = st.q3 + 1.5 * iqr;
    st.whisker_lo = *std::lower_bound(values.begin(), values.end(), lo_fence);
    auto hi_it = std::upper_bound(values.begin(), values.end(), hi_fence);
    st.whisker_hi = *(hi_it - 1);
    return st;
}

std::vector<SweepRow> sweep(const std::vector<Session>& sessions, const SimConfig& base,
                            SweepAxis axis, const std::vector<double>& values, int threads) {
    if (values.empty()) throw std::domain_error("analytics: sweep needs at least one value");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());

    for (const double value : values) {
        SimConfig cfg = base;
        switch (axis) {
            case SweepAxis::Alpha:
                cfg.rule = mixed_rule(value);
                break;
            case SweepAxis::Fee:
                cfg.fee = value;
                break;
            case SweepAxis::LiquidityMultiple:
                cfg.liquidity_multiple = value;
                break;
        }
        const auto outcomes = run_batch(sessions, cfg, threads);
        std::vector<SessionResult> results;
        results.reserve(outcomes.size());
        for (size_t i = 0; i < outcomes.size(); ++i) {
            if (!outcomes[i].result)
                throw std::runtime_error("sweep " + axis_name(axis) + "=" + std::to_string(value) +
                                         ", session " + std::to_string(i) + ": " + outcomes[i].error);
            results.push_back(*outcomes[i].result);
        }
        const auto keys = annualize(results);

        SweepRow row;
        row.value = value;
        std::vector<double> col(keys.size());
        auto fill = [&](double KeyVariables::*field, DistStats& slot) {
            for (size_t i = 0; i < keys.size(); ++i) col[i] = keys[i].*field;
            slot = dist_stats(col);
        };
        fill(&KeyVariables::spread_bp, row.spread_bp);
        fill(&KeyVariables::arb_pnl_annual, row.arb_pnl_annual);
        fill(&KeyVariables::lp_pnl_annual, row.lp_pnl_annual);
        fill(&KeyVariables::lp_pnl_hedged_annual, row.lp_pnl_hedged_annual);
        rows.push_back(row);
    }
    return rows;
}

double session_return(const Session& session) {
    if (session.bars.empty()) throw std::domain_error("analytics: empty session");
    return session.bars.back().p_mid - session.bars.front().p_mid;
}

double volume_variance(const Session& session, VolVarMode mode) {
    if (session.bars.empty()) throw std::domain_error("analytics: empty session");
    const size_t n = session.bars.size();
    double mean = 0.0;
    auto value = [&](const NormalizedBar& b) {
        switch (mode) {
            case VolVarMode::NetDiff: return b.v_bid - b.v_ask;
            case VolVarMode::Sum: return b.v_bid + b.v_ask;
            case VolVarMode::BidOnly: return b.v_bid;
            case VolVarMode::AskOnly: return b.v_ask;
        }
        return 0.0;
    };
    for (const NormalizedBar& b : session.bars) mean += value(b);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const NormalizedBar& b : session.bars) {
        const double d = value(b) - mean;
        var += d * d;
    }
    return var / static_cast<double>(n);
}

std::pair<RegressionResult, RegressionResult> regress_pnl(
    const std::vector<SessionResult>& results, const std::vector<Session>& sessions,
    VolVarMode mode) {
    if (results.size() != sessions.size())
        throw std::domain_error("analytics: results and sessions must align");
    const size_t n = results.size();
    if (n < 3) throw std::domain_error("analytics: regression needs at least three sessions");

    std::vector<double> r(n), w(n);
    for (size_t i = 0; i < n; ++i) {
        r[i] = session_return(sessions[i]);
        w[i] = volume_variance(sessions[i], mode);
    }

    double r_mean = 0.0, w_mean = 0.0;
    for (size_t i = 0; i < n; ++i) {
        r_mean += r[i];
        w_mean += w[i];
    }
    r_mean /= static_cast<double>(n);
    w_mean /= static_cast<double>(n);

    double s_rr = 0.0, s_ww = 0.0, s_rw = 0.0;
    for (size_t i = 0; i < n; ++i) {
        s_rr += (r[i] - r_mean) * (r[i] - r_mean);
        s_ww += (w[i] - w_mean) * (w[i] - w_mean);
        s_rw += (r[i] - r_mean) * (w[i] - w_mean);
    }
    if (!(s_rr > 0.0) || !(s_ww > 0.0))
        throw std::domain_error("analytics: constant regressor (rank deficiency)");
    const double det = s_rr * s_ww - s_rw * s_rw;
    if (!(det > 1e-12 * s_rr * s_ww))
        throw std::domain_error("analytics: collinear regressors (rank deficiency)");

    auto fit = [&](double SessionResult::*field) {
        double y_mean = 0.0;
        for (size_t i = 0; i < n; ++i) y_mean += results[i].*field;
        y_mean /= static_cast<double>(n);
        double s_yr = 0.0, s_yw = 0.0, s_yy = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double dy = results[i].*field - y_mean;
            s_yr += dy * (r[i] - r_mean);
            s_yw += dy * (w[i] - w_mean);
            s_yy += dy * dy;
        }
        RegressionResult out;
        out.beta_return = (s_yr * s_ww - s_yw * s_rw) / det;
        out.beta_volvar = (s_rr * s_yw - s_rw * s_yr) / det;
        out.intercept = y_mean - out.beta_return * r_mean - out.beta_volvar * w_mean;
        double ss_res = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double fitv = out.intercept + out.beta_return * r[i] + out.beta_volvar * w[i];
            const double e = results[i].*field - fitv;
            ss_res += e * e;
        }
        out.r_squared = s_yy > 0.0 ? std::clamp(1.0 - ss_res / s_yy, 0.0, 1.0) : 0.0;
        return out;
    };

    return {fit(&SessionResult::lp_pnl), fit(&SessionResult::lp_pnl_hedged)};
}

}  // namespace fxamm
