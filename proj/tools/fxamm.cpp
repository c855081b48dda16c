// fxamm: CFMM pool quoting, intraday session simulation, parameter sweeps,
// and synthetic bar-data generation for tokenized currency pairs.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fxamm/analytics.hpp"
#include "fxamm/arbitrage.hpp"
#include "fxamm/cfmm.hpp"
#include "fxamm/market_data.hpp"
#include "fxamm/simulator.hpp"
#include "fxamm/version.hpp"

namespace {

using fxamm::Session;
using fxamm::SimConfig;
using fxamm::SynthConfig;
using ojson = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Rows carry typed cells so the CSV and JSON renderings stay in sync.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;

    void add_row(std::vector<ojson> cells) { rows.push_back(std::move(cells)); }

    void write(std::ostream& out, bool as_json) const {
        if (as_json) {
            ojson arr = ojson::array();
            for (const auto& row : rows) {
                ojson obj;
                for (size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
                arr.push_back(std::move(obj));
            }
            out << arr.dump(2) << '\n';
            return;
        }
        for (size_t i = 0; i < columns.size(); ++i)
            out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                const ojson& cell = row[i];
                if (cell.is_string()) out << cell.get<std::string>();
                else if (cell.is_number_integer()) out << cell.get<long long>();
                else if (cell.is_number()) out << fmt_double(cell.get<double>());
                out << (i + 1 < row.size() ? "," : "\n");
            }
        }
    }
};

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << bytes;
    if (!out) throw IoError("write failed: " + path);
}

// Reproducibility manifest: effective config, input fingerprint, outputs.
void write_manifest(const std::string& output_path, const std::string& command,
                    const ojson& config, const ojson& inputs,
                    const std::vector<std::string>& outputs) {
    ojson m;
    m["tool"] = "fxamm";
    m["version"] = fxamm::kVersion;
    m["command"] = command;
    m["config"] = config;
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    write_file(output_path + ".manifest.json", m.dump(2) + "\n");
}

void emit_table(const Table& table, const std::string& output, bool as_json) {
    if (output.empty()) {
        table.write(std::cout, as_json);
        return;
    }
    std::ostringstream ss;
    table.write(ss, as_json);
    write_file(output, ss.str());
}

// ---- shared option bundles --------------------------------------------------

struct RuleOptions {
    std::string rule{"mixed"};
    double alpha{5.0};
    double s{1.0};

    void attach(CLI::App* cmd) {
        cmd->add_option("--rule", rule, "Pricing rule: sum, product or mixed")
            ->check(CLI::IsMember({"sum", "product", "mixed"}))
            ->capture_default_str();
        cmd->add_option("--alpha", alpha, "Mixed-rule sum/product blend weight")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    }

    fxamm::CfmmRule make(double rate) const {
        if (rule == "sum") return fxamm::sum_rule(rate);
        if (rule == "product") return fxamm::product_rule(rate);
        return fxamm::mixed_rule(alpha, rate);
    }

    ojson snapshot() const { return ojson{{"rule", rule}, {"alpha", alpha}}; }
};

struct SynthOptions {
    int sessions{1};
    std::uint64_t seed{0};
    double annual_vol{0.10};
    double half_spread_bp{0.5};
    double volume_concentration{0.5};
    std::string start_date{"2021-01-04"};
    std::string pair{"SYNTH"};

    void attach(CLI::App* cmd) {
        cmd->add_option("--sessions", sessions, "Number of synthetic sessions")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
        cmd->add_option("--annual-vol", annual_vol, "Annualized mid volatility")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--half-spread-bp", half_spread_bp, "Half bid/ask spread (bp)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--volume-concentration", volume_concentration,
                        "Gamma shape of per-minute volume; smaller is burstier")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--start-date", start_date, "First session date (YYYY-MM-DD)")
            ->capture_default_str();
        cmd->add_option("--pair", pair, "Currency-pair label")->capture_default_str();
    }

    SynthConfig make() const {
        SynthConfig cfg;
        cfg.seed = seed;
        cfg.n_sessions = sessions;
        cfg.annual_vol = annual_vol;
        cfg.half_spread_bp = half_spread_bp;
        cfg.volume_concentration = volume_concentration;
        cfg.start_date = start_date;
        cfg.pair = pair;
        return cfg;
    }

    ojson snapshot() const {
        return ojson{{"sessions", sessions},
                     {"seed", seed},
                     {"annual_vol", annual_vol},
                     {"half_spread_bp", half_spread_bp},
                     {"volume_concentration", volume_concentration},
                     {"start_date", start_date},
                     {"pair", pair}};
    }
};

struct SimOptions {
    RuleOptions rule;
    double fee_bp{1.0};
    double arb_fee_bp{-1.0};  // negative means "same as fee"
    double liquidity{1.0};
    bool no_arb{false};
    bool sequential{false};
    std::string volvar{"diff"};

    void attach(CLI::App* cmd) {
        rule.attach(cmd);
        cmd->add_option("--fee-bp", fee_bp, "Client pool fee (bp)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--arb-fee-bp", arb_fee_bp,
                        "Arbitrageur pool fee (bp); defaults to --fee-bp");
        cmd->add_option("--liquidity", liquidity, "Pool liquidity multiple")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_flag("--no-arb", no_arb, "Disable the per-minute arbitrage rebalancer");
        cmd->add_flag("--sequential-fills", sequential,
                      "Quote the two client orders one after the other");
        cmd->add_option("--volvar", volvar, "Volume-variance series: diff, sum, bid or ask")
            ->check(CLI::IsMember({"diff", "sum", "bid", "ask"}))
            ->capture_default_str();
    }

    SimConfig make() const {
        SimConfig cfg;
        cfg.rule = rule.make(1.0);
        cfg.fee = fee_bp * 1e-4;
        cfg.arb_fee = (arb_fee_bp < 0.0 ? fee_bp : arb_fee_bp) * 1e-4;
        cfg.liquidity_multiple = liquidity;
        cfg.arb_enabled = !no_arb;
        cfg.sequential_fills = sequential;
        return cfg;
    }

    fxamm::VolVarMode volvar_mode() const {
        if (volvar == "sum") return fxamm::VolVarMode::Sum;
        if (volvar == "bid") return fxamm::VolVarMode::BidOnly;
        if (volvar == "ask") return fxamm::VolVarMode::AskOnly;
        return fxamm::VolVarMode::NetDiff;
    }

    ojson snapshot() const {
        ojson j = rule.snapshot();
        j["fee_bp"] = fee_bp;
        j["arb_fee_bp"] = arb_fee_bp < 0.0 ? fee_bp : arb_fee_bp;
        j["liquidity"] = liquidity;
        j["arb_enabled"] = !no_arb;
        j["sequential_fills"] = sequential;
        j["volvar"] = volvar;
        return j;
    }
};

// Loads sessions either from a bar file or from the synthetic generator.
struct InputOptions {
    std::string input;
    bool synthetic{false};
    int min_real_bars{1000};
    SynthOptions synth;

    void attach(CLI::App* cmd) {
        auto* in = cmd->add_option("--input", input, "Bar file to load")->check(CLI::ExistingFile);
        auto* syn = cmd->add_flag("--synthetic", synthetic, "Generate synthetic sessions instead");
        in->excludes(syn);
        cmd->add_option("--min-real-bars", min_real_bars,
                        "Drop days with fewer real bars than this")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        synth.attach(cmd);
    }

    std::vector<Session> load(ojson& inputs_meta) const {
        if (!synthetic && input.empty())
            throw CLI::ValidationError("input", "either --input or --synthetic is required");
        if (synthetic) {
            inputs_meta.push_back(ojson{{"kind", "synthetic"}, {"config", synth.snapshot()}});
            return synth_sessions(synth.make());
        }
        const std::string bytes = read_file(input);
        inputs_meta.push_back(ojson{{"kind", "file"},
                                    {"path", input},
                                    {"fnv1a64", fnv1a64(bytes)}});
        std::istringstream stream(bytes);
        const auto bars = fxamm::parse_bars(stream);
        fxamm::SliceReport report;
        const auto days = fxamm::slice_sessions(bars, min_real_bars, &report);
        if (report.days_dropped > 0)
            std::cerr << "note: dropped " << report.days_dropped
                      << " day(s) under the minimum bar count\n";
        std::vector<Session> sessions;
        sessions.reserve(days.size());
        for (const auto& day : days) {
            try {
                sessions.push_back(fxamm::normalize_session(day, synth.pair));
            } catch (const std::domain_error& e) {
                std::cerr << "note: skipping " << day.date << ": " << e.what() << "\n";
            }
        }
        if (sessions.empty()) throw IoError("no usable sessions in " + input);
        return sessions;
    }

    ojson snapshot() const {
        ojson j = synth.snapshot();
        j["min_real_bars"] = min_real_bars;
        j["synthetic"] = synthetic;
        if (!input.empty()) j["input"] = input;
        return j;
    }
};

// ---- subcommands ------------------------------------------------------------

int run_quote(const RuleOptions& rule, double s, double x0, double y0, double fee_bp,
              double size_min, double size_max, int size_count, const std::string& output,
              bool as_json) {
    const fxamm::PoolState pool = fxamm::make_pool(rule.make(s), x0, y0, fee_bp * 1e-4);
    Table table;
    table.columns = {"size",         "util_domestic", "foreign_bid",  "foreign_ask",
                     "util_foreign", "domestic_bid",  "domestic_ask"};
    for (int i = 0; i < size_count; ++i) {
        const double size = size_count == 1
                                ? size_min
                                : size_min + (size_max - size_min) * i / (size_count - 1);
        auto rate = [&](bool exact_in, fxamm::Side side) -> ojson {
            try {
                const fxamm::Fill fill = exact_in ? quote_exact_in(pool, side, size)
                                                  : quote_exact_out(pool, side, size);
                return exact_in ? fill.amount_out / size : fill.amount_in / size;
            } catch (const std::exception&) {
                return nullptr;  // size not quotable on this side
            }
        };
        table.add_row({size, size / x0,
                       rate(true, fxamm::Side::RedeemForeign),
                       rate(false, fxamm::Side::RedeemDomestic),
                       size / y0,
                       rate(true, fxamm::Side::RedeemDomestic),
                       rate(false, fxamm::Side::RedeemForeign)});
    }
    emit_table(table, output, as_json);
    if (!output.empty()) {
        ojson config = rule.snapshot();
        config["s"] = s;
        config["x0"] = x0;
        config["y0"] = y0;
        config["fee_bp"] = fee_bp;
        config["size_min"] = size_min;
        config["size_max"] = size_max;
        config["size_count"] = size_count;
        config["json"] = as_json;
        write_manifest(output, "quote", config, ojson::array(), {output});
    }
    return 0;
}

int run_gen_data(const SynthOptions& synth, double base_price, double volume_scale,
                 const std::string& output) {
    const auto bars = fxamm::synth_raw_bars(synth.make(), base_price, volume_scale);
    std::ostringstream ss;
    fxamm::write_bars(ss, bars);
    write_file(output, ss.str());
    ojson config = synth.snapshot();
    config["base_price"] = base_price;
    config["volume_scale"] = volume_scale;
    write_manifest(output, "gen-data", config, ojson::array(), {output});
    return 0;
}

int run_simulate(const InputOptions& in, const SimOptions& sim, int threads,
                 const std::string& output, bool as_json, const std::string& dump_path,
                 int dump_session, const std::string& regression_path) {
    ojson inputs_meta = ojson::array();
    const auto sessions = in.load(inputs_meta);
    SimConfig cfg = sim.make();
    cfg.record_steps = !dump_path.empty();

    const auto outcomes = fxamm::run_batch(sessions, cfg, threads);

    Table table;
    table.columns = {"session", "date", "pair", "p_close", "spread_bp", "arb_pnl", "fees",
                     "lp_pnl",  "lp_pnl_hedged", "arb_pnl_annual", "lp_pnl_annual",
                     "lp_pnl_hedged_annual", "final_x", "final_y"};
    std::vector<fxamm::SessionResult> results;
    std::vector<size_t> result_index;
    int failed = 0;
    for (size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].result) {
            ++failed;
            std::cerr << "session " << i << " failed: " << outcomes[i].error << "\n";
            continue;
        }
        const fxamm::SessionResult& r = *outcomes[i].result;
        results.push_back(r);
        result_index.push_back(i);
        table.add_row({static_cast<long long>(i), sessions[i].date, sessions[i].pair, r.p_close,
                       r.spread_bp, r.arb_pnl, r.fees, r.lp_pnl, r.lp_pnl_hedged,
                       fxamm::kTradingDaysPerYear * r.arb_pnl,
                       fxamm::kTradingDaysPerYear * r.lp_pnl,
                       fxamm::kTradingDaysPerYear * r.lp_pnl_hedged, r.final_x, r.final_y});
    }
    if (results.empty()) throw IoError("all sessions failed");
    emit_table(table, output, as_json);

    std::vector<std::string> outputs;
    if (!output.empty()) outputs.push_back(output);

    if (!dump_path.empty()) {
        if (dump_session < 0 || static_cast<size_t>(dump_session) >= results.size())
            throw CLI::ValidationError("--dump-session", "index out of range");
        const fxamm::SessionResult& r = results[dump_session];
        const Session& s = sessions[result_index[dump_session]];
        const double x0 = cfg.liquidity_multiple;
        const double y0 = cfg.liquidity_multiple;
        const double p0 = s.bars.front().p_mid;
        Table dump;
        dump.columns = {"minute", "p_mid", "amm_bid", "amm_ask", "x", "y", "spread_bid",
                        "spread_ask", "v_bid", "v_ask", "il", "il_hedged", "fees_cum",
                        "arb_pnl_cum", "pool_product", "pool_sum_avg"};
        double fees_cum = 0.0;
        double arb_cum = 0.0;
        for (const fxamm::StepRecord& rec : r.steps) {
            fees_cum += rec.fee_value;
            arb_cum += rec.arb_profit;
            const double value = rec.x + rec.p_mid * rec.y;
            auto opt = [](double v) -> ojson {
                if (std::isnan(v)) return nullptr;
                return v;
            };
            dump.add_row({static_cast<long long>(rec.index), rec.p_mid, opt(rec.rate_bid),
                          opt(rec.rate_ask), rec.x, rec.y, opt(rec.spread_bid),
                          opt(rec.spread_ask), s.bars[rec.index].v_bid, s.bars[rec.index].v_ask,
                          value - (x0 + p0 * y0), value - (x0 + rec.p_mid * y0), fees_cum,
                          arb_cum, rec.x * rec.y, 0.5 * (rec.x + rec.y)});
        }
        std::ostringstream ss;
        dump.write(ss, as_json);
        write_file(dump_path, ss.str());
        outputs.push_back(dump_path);
    }

    if (!regression_path.empty()) {
        std::vector<Session> used;
        for (size_t idx : result_index) used.push_back(sessions[idx]);
        const auto [unhedged, hedged] = fxamm::regress_pnl(results, used, sim.volvar_mode());
        Table reg;
        reg.columns = {"pnl", "beta_return", "beta_volvar", "intercept", "r_squared", "count"};
        reg.add_row({"lp_pnl", unhedged.beta_return, unhedged.beta_volvar, unhedged.intercept,
                     unhedged.r_squared, static_cast<long long>(results.size())});
        reg.add_row({"lp_pnl_hedged", hedged.beta_return, hedged.beta_volvar, hedged.intercept,
                     hedged.r_squared, static_cast<long long>(results.size())});
        std::ostringstream ss;
        reg.write(ss, as_json);
        write_file(regression_path, ss.str());
        outputs.push_back(regression_path);
    }

    if (!output.empty()) {
        ojson config = sim.snapshot();
        config["threads"] = threads;
        config["json"] = as_json;
        const ojson in_snap = in.snapshot();
        for (const auto& [k, v] : in_snap.items()) config[k] = v;
        write_manifest(output, "simulate", config, inputs_meta, outputs);
    }
    if (failed > 0) std::cerr << failed << " session(s) failed\n";
    return 0;
}

int run_sweep(const InputOptions& in, const SimOptions& sim, const std::string& axis,
              std::vector<double> values, int threads, const std::string& output, bool as_json) {
    ojson inputs_meta = ojson::array();
    const auto sessions = in.load(inputs_meta);
    if (values.empty()) throw CLI::ValidationError("--values", "at least one value required");

    fxamm::SweepAxis sweep_axis = fxamm::SweepAxis::Alpha;
    if (axis == "fee") {
        sweep_axis = fxamm::SweepAxis::Fee;
        for (double& v : values) v *= 1e-4;  // CLI takes basis points
    } else if (axis == "liquidity") {
        sweep_axis = fxamm::SweepAxis::LiquidityMultiple;
    }

    const auto rows = fxamm::sweep(sessions, sim.make(), sweep_axis, values, threads);

    Table table;
    table.columns = {"axis", "value", "variable", "median", "mad", "q1", "q2", "q3",
                     "whisker_lo", "whisker_hi", "count"};
    for (const auto& row : rows) {
        const double shown = axis == "fee" ? row.value * 1e4 : row.value;
        auto add = [&](const char* name, const fxamm::DistStats& st) {
            table.add_row({axis, shown, name, st.median, st.mad, st.q1, st.q2, st.q3,
                           st.whisker_lo, st.whisker_hi, static_cast<long long>(st.count)});
        };
        add("spread_bp", row.spread_bp);
        add("arb_pnl_annual", row.arb_pnl_annual);
        add("lp_pnl_annual", row.lp_pnl_annual);
        add("lp_pnl_hedged_annual", row.lp_pnl_hedged_annual);
    }
    emit_table(table, output, as_json);

    if (!output.empty()) {
        ojson config = sim.snapshot();
        config["axis"] = axis;
        config["values"] = values;
        config["threads"] = threads;
        config["json"] = as_json;
        const ojson in_snap = in.snapshot();
        for (const auto& [k, v] : in_snap.items()) config[k] = v;
        write_manifest(output, "sweep", config, inputs_meta, {output});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CFMM pool mechanics, FX-anchored arbitrage and intraday pool simulation"};
    app.set_version_flag("--version", fxamm::kVersion);
    app.set_config("--config", "", "Key-value config file; flags override it");
    app.require_subcommand(1);

    // quote
    auto* quote = app.add_subcommand("quote", "Bid/ask rate ladder for one pool");
    RuleOptions quote_rule;
    quote_rule.rule = "product";
    quote_rule.alpha = 5.0;
    double q_s = 1.25, q_x0 = 12500.0, q_y0 = 10000.0, q_fee_bp = 1.0;
    double q_size_min = 1.0, q_size_max = 100.0;
    int q_size_count = 100;
    std::string q_output;
    bool q_json = false;
    quote_rule.attach(quote);
    quote->add_option("--s", q_s, "Equilibrium rate, domestic per foreign")->capture_default_str();
    quote->add_option("--x0", q_x0, "Domestic balance")->check(CLI::PositiveNumber)->capture_default_str();
    quote->add_option("--y0", q_y0, "Foreign balance")->check(CLI::PositiveNumber)->capture_default_str();
    quote->add_option("--fee-bp", q_fee_bp, "Pool fee (bp)")->check(CLI::NonNegativeNumber)->capture_default_str();
    quote->add_option("--size-min", q_size_min, "Smallest order size")->capture_default_str();
    quote->add_option("--size-max", q_size_max, "Largest order size")->capture_default_str();
    quote->add_option("--size-count", q_size_count, "Grid points")->check(CLI::PositiveNumber)->capture_default_str();
    quote->add_option("--output", q_output, "Write the table here instead of stdout");
    quote->add_flag("--json", q_json, "Emit JSON records");

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "Write a synthetic bar file");
    SynthOptions gen_synth;
    double g_base_price = 1.25, g_volume_scale = 100.0;
    std::string g_output;
    gen_synth.attach(gen);
    gen->add_option("--base-price", g_base_price, "Price level of the generated quotes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen->add_option("--volume-scale", g_volume_scale, "Scale of natural volumes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen->add_option("--output", g_output, "Bar file path")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run intraday sessions and report P&L");
    InputOptions sim_in;
    SimOptions sim_opts;
    int sim_threads = 1;
    std::string sim_output, sim_dump, sim_regression;
    int sim_dump_session = 0;
    bool sim_json = false;
    sim_in.attach(simulate);
    sim_opts.attach(simulate);
    simulate->add_option("--threads", sim_threads, "Worker threads for the batch")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--output", sim_output, "Per-session table path (default stdout)");
    simulate->add_option("--dump-steps", sim_dump, "Write a per-minute dump of one session");
    simulate->add_option("--dump-session", sim_dump_session, "Session index for --dump-steps")
        ->capture_default_str();
    simulate->add_option("--regression", sim_regression,
                         "Write the P&L-vs-return/volume-variance regression table");
    simulate->add_flag("--json", sim_json, "Emit JSON records");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Distribution of key variables over a parameter");
    InputOptions sweep_in;
    SimOptions sweep_opts;
    std::string sweep_axis;
    std::vector<double> sweep_values;
    int sweep_threads = 1;
    std::string sweep_output;
    bool sweep_json = false;
    sweep_in.attach(sweep_cmd);
    sweep_opts.attach(sweep_cmd);
    sweep_cmd->add_option("--axis", sweep_axis, "alpha, fee (bp) or liquidity")
        ->check(CLI::IsMember({"alpha", "fee", "liquidity"}))
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated axis values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--threads", sweep_threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--output", sweep_output, "Table path (default stdout)");
    sweep_cmd->add_flag("--json", sweep_json, "Emit JSON records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(quote))
            return run_quote(quote_rule, q_s, q_x0, q_y0, q_fee_bp, q_size_min, q_size_max,
                             q_size_count, q_output, q_json);
        if (app.got_subcommand(gen))
            return run_gen_data(gen_synth, g_base_price, g_volume_scale, g_output);
        if (app.got_subcommand(simulate))
            return run_simulate(sim_in, sim_opts, sim_threads, sim_output, sim_json, sim_dump,
                                sim_dump_session, sim_regression);
        if (app.got_subcommand(sweep_cmd))
            return run_sweep(sweep_in, sweep_opts, sweep_axis, sweep_values, sweep_threads,
                             sweep_output, sweep_json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fxamm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
