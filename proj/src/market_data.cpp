#include "fxamm/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string_view>

namespace fxamm {

namespace {

// ---- calendar -------------------------------------------------------------

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

int digits(std::string_view text, size_t pos, int count) {
    int value = 0;
    for (int i = 0; i < count; ++i) {
        if (pos + i >= text.size() || text[pos + i] < '0' || text[pos + i] > '9')
            throw ParseError("timestamp: expected digit at position " + std::to_string(pos + i));
        value = value * 10 + (text[pos + i] - '0');
    }
    return value;
}

// ---- deterministic sampling -------------------------------------------------
// Hand-rolled samplers keep generated data identical across standard-library
// implementations.

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double normal01(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// Marsaglia-Tsang, with the shape boost for k < 1.
double gamma_draw(std::mt19937_64& rng, double shape) {
    if (shape < 1.0) {
        const double u = 1.0 - uniform01(rng);
        return gamma_draw(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z, v;
        do {
            z = normal01(rng);
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = 1.0 - uniform01(rng);
        if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
    }
}

struct SynthPath {
    std::vector<double> mid;    // mid level, starts at 1
    std::vector<double> v_bid;  // volume shares, bid+ask sums to 1
    std::vector<double> v_ask;
};

SynthPath make_path(const SynthConfig& cfg, int session_index) {
    if (!(cfg.volume_concentration > 0.0))
        throw std::domain_error("synth: volume_concentration must be positive");
    if (cfg.annual_vol < 0.0 || cfg.half_spread_bp < 0.0)
        throw std::domain_error("synth: rates must be nonnegative");
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(session_index) + 1)));
    SynthPath path;
    path.mid.resize(kBarsPerSession);
    path.v_bid.resize(kBarsPerSession);
    path.v_ask.resize(kBarsPerSession);

    const double sigma = cfg.annual_vol / std::sqrt(260.0 * kBarsPerSession);
    double log_mid = 0.0;
    for (int t = 0; t < kBarsPerSession; ++t) {
        path.mid[t] = std::exp(log_mid);
        log_mid += sigma * normal01(rng);
    }
    path.mid[0] = 1.0;

    double total = 0.0;
    for (int t = 0; t < kBarsPerSession; ++t) {
        path.v_bid[t] = gamma_draw(rng, cfg.volume_concentration);
        path.v_ask[t] = gamma_draw(rng, cfg.volume_concentration);
        total += path.v_bid[t] + path.v_ask[t];
    }
    for (int t = 0; t < kBarsPerSession; ++t) {
        path.v_bid[t] /= total;
        path.v_ask[t] /= total;
    }
    return path;
}

}  // namespace

std::int64_t parse_minute(const std::string& text) {
    // YYYY-MM-DDTHH:MM with optional ":SS" (seconds must be 00) and "Z".
    std::string_view v(text);
    if (v.size() < 16) throw ParseError("timestamp too short: '" + text + "'");
    const int year = digits(v, 0, 4);
    const int month = digits(v, 5, 2);
    const int day = digits(v, 8, 2);
    const int hour = digits(v, 11, 2);
    const int minute = digits(v, 14, 2);
    if (v[4] != '-' || v[7] != '-' || (v[10] != 'T' && v[10] != ' ') || v[13] != ':')
        throw ParseError("timestamp: bad separators in '" + text + "'");
    size_t pos = 16;
    if (pos < v.size() && v[pos] == ':') {
        if (digits(v, pos + 1, 2) != 0)
            throw ParseError("timestamp: sub-minute resolution not supported: '" + text + "'");
        pos += 3;
    }
    if (pos < v.size() && v[pos] == 'Z') ++pos;
    if (pos != v.size()) throw ParseError("timestamp: trailing characters in '" + text + "'");
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59)
        throw ParseError("timestamp: field out of range in '" + text + "'");
    return days_from_civil(year, month, day) * kBarsPerSession + hour * 60 + minute;
}

std::string format_minute(std::int64_t minute) {
    const std::int64_t day = minute >= 0 ? minute / kBarsPerSession
                                         : (minute - kBarsPerSession + 1) / kBarsPerSession;
    const int rem = static_cast<int>(minute - day * kBarsPerSession);
    int y, m, d;
    civil_from_days(day, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:00Z", y, m, d, rem / 60, rem % 60);
    return buf;
}

std::int64_t parse_date(const std::string& text) {
    std::string_view v(text);
    if (v.size() != 10 || v[4] != '-' || v[7] != '-')
        throw ParseError("date: expected YYYY-MM-DD, got '" + text + "'");
    return days_from_civil(digits(v, 0, 4), digits(v, 5, 2), digits(v, 8, 2));
}

std::string format_date(std::int64_t day) {
    int y, m, d;
    civil_from_days(day, y, m, d);
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

std::vector<RawBar> parse_bars(std::istream& input) {
    std::vector<RawBar> bars;
    std::string line;
    long line_no = 0;

    auto fail = [&](const std::string& what) -> ParseError {
        return ParseError("line " + std::to_string(line_no) + ": " + what);
    };

    if (!std::getline(input, line)) return bars;  // empty input
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kBarHeader) throw fail("unexpected header");

    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::string_view v(line);
        std::string fields[11];
        int n = 0;
        size_t start = 0;
        for (size_t i = 0; i <= v.size(); ++i) {
            if (i == v.size() || v[i] == ',') {
                if (n >= 11) throw fail("too many columns");
                fields[n++] = std::string(v.substr(start, i - start));
                start = i + 1;
            }
        }
        if (n != 11) throw fail("expected 11 columns, got " + std::to_string(n));

        RawBar bar;
        try {
            bar.minute = parse_minute(fields[0]);
        } catch (const ParseError& e) {
            throw fail(e.what());
        }
        double* slots[10] = {&bar.bid_open, &bar.bid_high, &bar.bid_low, &bar.bid_close,
                             &bar.ask_open, &bar.ask_high, &bar.ask_low, &bar.ask_close,
                             &bar.bid_volume, &bar.ask_volume};
        for (int i = 0; i < 10; ++i) {
            char* end = nullptr;
            const std::string& f = fields[i + 1];
            const double value = std::strtod(f.c_str(), &end);
            if (f.empty() || end != f.c_str() + f.size() || !std::isfinite(value))
                throw fail("bad number '" + f + "'");
            *slots[i] = value;
        }

        for (int side = 0; side < 2; ++side) {
            const double open = side == 0 ? bar.bid_open : bar.ask_open;
            const double high = side == 0 ? bar.bid_high : bar.ask_high;
            const double low = side == 0 ? bar.bid_low : bar.ask_low;
            const double close = side == 0 ? bar.bid_close : bar.ask_close;
            if (!(low > 0.0)) throw fail("prices must be positive");
            if (low > std::min(open, close) || high < std::max(open, close))
                throw fail("OHLC ordering violated");
        }
        if (bar.ask_close < bar.bid_close) throw fail("crossed quote: ask_close < bid_close");
        if (bar.bid_volume < 0.0 || bar.ask_volume < 0.0) throw fail("negative volume");

        if (!bars.empty()) {
            if (bar.minute == bars.back().minute) throw fail("duplicate timestamp");
            if (bar.minute < bars.back().minute) throw fail("timestamps not increasing");
        }
        bars.push_back(bar);
    }
    return bars;
}

std::vector<RawDay> slice_sessions(const std::vector<RawBar>& bars, int min_real_bars,
                                   SliceReport* report) {
    SliceReport local;
    std::vector<RawDay> days;

    size_t i = 0;
    while (i < bars.size()) {
        const std::int64_t day = bars[i].minute / kBarsPerSession;
        const std::int64_t day_start = day * kBarsPerSession;
        size_t j = i;
        while (j < bars.size() && bars[j].minute / kBarsPerSession == day) ++j;

        RawDay out;
        out.date = format_date(day);
        out.bars.resize(kBarsPerSession);
        out.real_bars = static_cast<int>(j - i);

        // Leading minutes backfill from the day's first real bar; later gaps
        // carry the most recent close forward with zero volume.
        auto filler = [](const RawBar& src, std::int64_t minute) {
            RawBar f;
            f.minute = minute;
            f.bid_open = f.bid_high = f.bid_low = f.bid_close = src.bid_close;
            f.ask_open = f.ask_high = f.ask_low = f.ask_close = src.ask_close;
            f.bid_volume = f.ask_volume = 0.0;
            return f;
        };

        size_t k = i;
        const RawBar* last = &bars[i];
        for (int slot = 0; slot < kBarsPerSession; ++slot) {
            const std::int64_t minute = day_start + slot;
            if (k < j && bars[k].minute == minute) {
                out.bars[slot] = bars[k];
                last = &bars[k];
                ++k;
            } else {
                out.bars[slot] = filler(*last, minute);
                ++local.bars_filled;
            }
        }

        if (out.real_bars >= min_real_bars) {
            ++local.days_kept;
            days.push_back(std::move(out));
        } else {
            ++local.days_dropped;
            local.bars_filled -= kBarsPerSession - out.real_bars;
        }
        i = j;
    }
    if (report) *report = local;
    return days;
}

Session normalize_session(const RawDay& day, const std::string& pair) {
    if (day.bars.size() != static_cast<size_t>(kBarsPerSession))
        throw std::domain_error("normalize: day must have " + std::to_string(kBarsPerSession) + " bars");
    Session session;
    session.pair = pair;
    session.date = day.date;
    session.bars.resize(kBarsPerSession);

    const double base = 0.5 * (day.bars[0].bid_close + day.bars[0].ask_close);
    if (!(base > 0.0)) throw std::domain_error("normalize: nonpositive base price");

    double total_volume = 0.0;
    for (const RawBar& bar : day.bars) total_volume += bar.bid_volume + bar.ask_volume;
    if (!(total_volume > 0.0)) throw std::domain_error("normalize: session has zero total volume");

    for (int t = 0; t < kBarsPerSession; ++t) {
        const RawBar& bar = day.bars[t];
        NormalizedBar& n = session.bars[t];
        n.p_mid = 0.5 * (bar.bid_close + bar.ask_close) / base;
        n.p_bid = bar.bid_close / base;
        n.p_ask = bar.ask_close / base;
        n.v_bid = bar.bid_volume / total_volume;
        n.v_ask = bar.ask_volume / total_volume;
    }
    return session;
}

std::vector<Session> synth_sessions(const SynthConfig& cfg) {
    if (cfg.n_sessions < 1) throw std::domain_error("synth: n_sessions must be positive");
    const std::int64_t day0 = parse_date(cfg.start_date);
    const double h = cfg.half_spread_bp * 1e-4;

    std::vector<Session> sessions(cfg.n_sessions);
    for (int idx = 0; idx < cfg.n_sessions; ++idx) {
        const SynthPath path = make_path(cfg, idx);
        Session& s = sessions[idx];
        s.pair = cfg.pair;
        s.date = format_date(day0 + idx);
        s.bars.resize(kBarsPerSession);
        for (int t = 0; t < kBarsPerSession; ++t) {
            s.bars[t].p_mid = path.mid[t];
            s.bars[t].p_bid = path.mid[t] * (1.0 - h);
            s.bars[t].p_ask = path.mid[t] * (1.0 + h);
            s.bars[t].v_bid = path.v_bid[t];
            s.bars[t].v_ask = path.v_ask[t];
        }
    }
    return sessions;
}

std::vector<RawBar> synth_raw_bars(const SynthConfig& cfg, double base_price, double volume_scale) {
    if (!(base_price > 0.0) || !(volume_scale > 0.0))
        throw std::domain_error("synth: base price and volume scale must be positive");
    const std::int64_t day0 = parse_date(cfg.start_date);
    const double h = cfg.half_spread_bp * 1e-4;

    std::vector<RawBar> bars;
    bars.reserve(static_cast<size_t>(cfg.n_sessions) * kBarsPerSession);
    for (int idx = 0; idx < cfg.n_sessions; ++idx) {
        const SynthPath path = make_path(cfg, idx);
        double prev_mid = base_price;
        for (int t = 0; t < kBarsPerSession; ++t) {
            const double mid = base_price * path.mid[t];
            RawBar bar;
            bar.minute = (day0 + idx) * kBarsPerSession + t;
            const double open = t == 0 ? mid : prev_mid;
            bar.bid_open = open * (1.0 - h);
            bar.bid_close = mid * (1.0 - h);
            bar.bid_high = std::max(bar.bid_open, bar.bid_close);
            bar.bid_low = std::min(bar.bid_open, bar.bid_close);
            bar.ask_open = open * (1.0 + h);
            bar.ask_close = mid * (1.0 + h);
            bar.ask_high = std::max(bar.ask_open, bar.ask_close);
            bar.ask_low = std::min(bar.ask_open, bar.ask_close);
            bar.bid_volume = path.v_bid[t] * volume_scale;
            bar.ask_volume = path.v_ask[t] * volume_scale;
            bars.push_back(bar);
            prev_mid = mid;
        }
    }
    return bars;
}

void write_bars(std::ostream& out, const std::vector<RawBar>& bars) {
    out << kBarHeader << '\n';
    char buf[360];
    for (const RawBar& bar : bars) {
        std::snprintf(buf, sizeof(buf),
                      "%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      format_minute(bar.minute).c_str(),
                      bar.bid_open, bar.bid_high, bar.bid_low, bar.bid_close,
                      bar.ask_open, bar.ask_high, bar.ask_low, bar.ask_close,
                      bar.bid_volume, bar.ask_volume);
        out << buf;
    }
}

}  // namespace fxamm
