#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fxamm/errors.hpp"

namespace fxamm {

inline constexpr int kBarsPerSession = 1440;

// Input file column layout; one row per minute.
inline constexpr const char* kBarHeader =
    "timestamp,bid_open,bid_high,bid_low,bid_close,ask_open,ask_high,ask_low,ask_close,"
    "bid_volume,ask_volume";

// One minute of quotes and traded volume in natural units. `minute` counts
// UTC minutes since the Unix epoch.
struct RawBar {
    std::int64_t minute{0};
    double bid_open{0}, bid_high{0}, bid_low{0}, bid_close{0};
    double ask_open{0}, ask_high{0}, ask_low{0}, ask_close{0};
    double bid_volume{0}, ask_volume{0};
};

// One minute of session-normalized data: close prices divided by the
// session's first mid, volumes as shares of the session's total.
struct NormalizedBar {
    double p_mid{0}, p_bid{0}, p_ask{0};
    double v_bid{0}, v_ask{0};
};

struct Session {
    std::string pair;
    std::string date;  // YYYY-MM-DD (UTC day)
    std::vector<NormalizedBar> bars;  // exactly kBarsPerSession
};

// One UTC calendar day padded to a full minute grid. `real_bars` counts rows
// that came from the input rather than gap fill.
struct RawDay {
    std::string date;
    std::vector<RawBar> bars;  // exactly kBarsPerSession
    int real_bars{0};
};

struct SliceReport {
    int days_kept{0};
    int days_dropped{0};
    int bars_filled{0};
};

// Parses the delimited bar format. Rows must be strictly increasing in time;
// validation failures raise ParseError with the line number.
std::vector<RawBar> parse_bars(std::istream& input);

// Groups bars into UTC days. Missing minutes carry the most recent close
// forward with zero volume (a day's leading gap backfills from its first real
// bar); days with fewer than min_real_bars real rows are dropped.
std::vector<RawDay> slice_sessions(const std::vector<RawBar>& bars, int min_real_bars = 1000,
                                   SliceReport* report = nullptr);

// Close-price and volume normalization of one day. Throws std::domain_error
// when the day has zero total volume.
Session normalize_session(const RawDay& day, const std::string& pair);

// Synthetic session generator standing in for recorded data. The mid follows
// a driftless geometric random walk; per-minute volume shares are gamma draws
// normalized to unit mass per session.
struct SynthConfig {
    std::uint64_t seed{0};
    int n_sessions{1};
    double annual_vol{0.10};          // annualized volatility of the mid
    double half_spread_bp{0.5};       // half bid/ask spread in basis points
    double volume_concentration{0.5}; // gamma shape; smaller = burstier volume
    std::string pair{"SYNTH"};
    std::string start_date{"2021-01-04"};
};

std::vector<Session> synth_sessions(const SynthConfig& cfg);

// Same paths rendered as natural-unit bars around base_price, for writing an
// input file that round-trips through parse/slice/normalize.
std::vector<RawBar> synth_raw_bars(const SynthConfig& cfg, double base_price, double volume_scale);

void write_bars(std::ostream& out, const std::vector<RawBar>& bars);

// Timestamp helpers (ISO-8601 UTC, minute resolution).
std::int64_t parse_minute(const std::string& text);
std::string format_minute(std::int64_t minute);
std::int64_t parse_date(const std::string& text);  // day index since epoch
std::string format_date(std::int64_t day);

}  // namespace fxamm
