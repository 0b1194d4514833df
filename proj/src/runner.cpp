#include "mmlab/runner.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mmlab {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Entry {
    std::string value;
    int line;
};

double parse_double(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        fail(e.line, "value for '" + key + "' is not a number ('" + v + "')");
    return x;
}

long parse_long(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        fail(e.line, "value for '" + key + "' is not an integer ('" + v + "')");
    return x;
}

std::uint64_t parse_u64(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || v.front() == '-')
        fail(e.line, "value for '" + key + "' is not an unsigned integer ('" + v + "')");
    return x;
}

bool parse_bool(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    if (v == "true") return true;
    if (v == "false") return false;
    fail(e.line, "value for '" + key + "' must be true or false ('" + v + "')");
}

std::vector<double> parse_double_list(const Entry& e, const std::string& key) {
    std::string v = e.value;
    for (char& c : v)
        if (c == ',') c = ' ';
    std::istringstream in(v);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            fail(e.line, "value list for '" + key + "' has a non-number ('" + tok + "')");
        out.push_back(x);
    }
    if (out.empty()) fail(e.line, "value list for '" + key + "' is empty");
    return out;
}

const std::set<std::string> known_keys = {
    "kind", "b", "a", "mu", "sigma", "s0",
    "A", "k", "T", "gamma", "eta", "penalty",
    "strategy", "assume", "seed", "n_steps", "n_paths", "q0",
    "x0", "threads", "t0", "sweep_param", "sweep_values", "out",
    "emit_trajectories", "table_format", "benchmark_pair", "ode_q_max", "ode_n_steps",
};

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::linear: return "linear";
        case Strategy::linear_penalty: return "linear_penalty";
        case Strategy::general_penalty: return "general_penalty";
        case Strategy::exponential: return "exponential";
        case Strategy::ode_exponential: return "ode_exponential";
    }
    return "?";
}

std::string assume_name(QuoteAssumption a) {
    return a == QuoteAssumption::model ? "model" : "martingale";
}

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

// Table statistics ("nan" for sentinel fields).
std::string fixed6(double x) { return std::isnan(x) ? "nan" : fmt("%.6f", x); }
// Identifying parameters and manifests: shortest exact decimal.
std::string exact(double x) { return fmt("%.17g", x); }

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            if (const auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            const std::string line = trim(raw);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(line_no, "empty key");
            if (!known_keys.count(key)) fail(line_no, "unknown key '" + key + "'");
            if (entries.count(key)) fail(line_no, "duplicate key '" + key + "'");
            entries.emplace(key, Entry{value, line_no});
        }
    }

    const auto find = [&](const std::string& key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    const auto require = [&](const std::string& key) -> const Entry& {
        const Entry* e = find(key);
        if (!e) throw std::runtime_error("missing required key '" + key + "'");
        return *e;
    };

    RunConfig cfg;

    // Market model.
    const Entry& kind_e = require("kind");
    const std::string kind = trim(kind_e.value);
    const Entry& sigma_e = require("sigma");
    const double sigma = parse_double(sigma_e, "sigma");
    if (sigma < 0.0) fail(sigma_e.line, "sigma must be >= 0");
    const double s0 = parse_double(require("s0"), "s0");

    if (kind == "abm" || kind == "martingale") {
        double b = 0.0;
        if (const Entry* e = find("b")) b = parse_double(*e, "b");
        if (kind == "martingale" && b != 0.0) fail(find("b")->line, "martingale has b = 0");
        if (const Entry* e = find("a")) fail(e->line, "key 'a' applies to ou models");
        if (const Entry* e = find("mu")) fail(e->line, "key 'mu' applies to ou models");
        cfg.sim.model = MidPriceModel::abm(b, sigma, s0);
    } else if (kind == "ou") {
        const Entry& a_e = require("a");
        const double a = parse_double(a_e, "a");
        if (!(a > 0.0)) fail(a_e.line, "ou reversion speed 'a' must be > 0");
        const double mu = parse_double(require("mu"), "mu");
        if (const Entry* e = find("b")) fail(e->line, "key 'b' applies to abm models");
        cfg.sim.model = MidPriceModel::ou(a, mu, sigma, s0);
    } else {
        fail(kind_e.line, "unknown model kind '" + kind + "' (abm, martingale, ou)");
    }

    // Strategy parameters.
    const Entry& A_e = require("A");
    cfg.sim.params.base_intensity = parse_double(A_e, "A");
    if (!(cfg.sim.params.base_intensity > 0.0)) fail(A_e.line, "A must be > 0");
    const Entry& k_e = require("k");
    cfg.sim.params.decay = parse_double(k_e, "k");
    if (!(cfg.sim.params.decay > 0.0)) fail(k_e.line, "k must be > 0");
    const Entry& T_e = require("T");
    cfg.sim.params.horizon = parse_double(T_e, "T");
    if (!(cfg.sim.params.horizon > 0.0)) fail(T_e.line, "T must be > 0");
    if (const Entry* e = find("eta")) {
        cfg.sim.params.eta = parse_double(*e, "eta");
        if (cfg.sim.params.eta < 0.0) fail(e->line, "eta must be >= 0");
    }
    if (const Entry* e = find("gamma")) {
        cfg.sim.params.gamma = parse_double(*e, "gamma");
        if (cfg.sim.params.gamma < 0.0) fail(e->line, "gamma must be >= 0");
    }
    if (const Entry* e = find("penalty")) {
        const std::string v = trim(e->value);
        if (v == "one")
            cfg.sim.params.penalty = PenaltyKind::one;
        else if (v == "square")
            cfg.sim.params.penalty = PenaltyKind::square;
        else
            fail(e->line, "unknown penalty '" + v + "' (one, square)");
    }

    const Entry& strat_e = require("strategy");
    {
        const std::string v = trim(strat_e.value);
        if (v == "linear")
            cfg.sim.strategy = Strategy::linear;
        else if (v == "linear_penalty")
            cfg.sim.strategy = Strategy::linear_penalty;
        else if (v == "general_penalty")
            cfg.sim.strategy = Strategy::general_penalty;
        else if (v == "exponential")
            cfg.sim.strategy = Strategy::exponential;
        else if (v == "ode_exponential")
            cfg.sim.strategy = Strategy::ode_exponential;
        else
            fail(strat_e.line, "unknown strategy '" + v + "'");
    }
    if ((cfg.sim.strategy == Strategy::exponential ||
         cfg.sim.strategy == Strategy::ode_exponential) &&
        !(cfg.sim.params.gamma > 0.0))
        fail(strat_e.line, "strategy '" + trim(strat_e.value) + "' needs gamma > 0");

    if (const Entry* e = find("assume")) {
        const std::string v = trim(e->value);
        if (v == "model")
            cfg.sim.assume = QuoteAssumption::model;
        else if (v == "martingale")
            cfg.sim.assume = QuoteAssumption::martingale;
        else
            fail(e->line, "unknown assume '" + v + "' (model, martingale)");
    }

    // Run controls.
    cfg.sim.seed = parse_u64(require("seed"), "seed");
    if (const Entry* e = find("n_steps")) {
        cfg.sim.n_steps = static_cast<int>(parse_long(*e, "n_steps"));
        if (cfg.sim.n_steps < 1) fail(e->line, "n_steps must be >= 1");
    }
    if (const Entry* e = find("n_paths")) {
        cfg.sim.n_paths = static_cast<int>(parse_long(*e, "n_paths"));
        if (cfg.sim.n_paths < 1) fail(e->line, "n_paths must be >= 1");
    }
    if (const Entry* e = find("q0")) cfg.sim.q0 = parse_long(*e, "q0");
    if (const Entry* e = find("x0")) cfg.sim.x0 = parse_double(*e, "x0");
    if (const Entry* e = find("threads")) {
        cfg.sim.threads = static_cast<int>(parse_long(*e, "threads"));
        if (cfg.sim.threads < 0) fail(e->line, "threads must be >= 0");
    }
    if (const Entry* e = find("ode_q_max")) {
        cfg.sim.ode_q_max = static_cast<int>(parse_long(*e, "ode_q_max"));
        if (cfg.sim.ode_q_max < 1) fail(e->line, "ode_q_max must be >= 1");
    }
    if (const Entry* e = find("ode_n_steps")) {
        cfg.sim.ode_n_steps = static_cast<int>(parse_long(*e, "ode_n_steps"));
        if (cfg.sim.ode_n_steps < 1) fail(e->line, "ode_n_steps must be >= 1");
    }
    if (const Entry* e = find("t0")) {
        cfg.t0 = parse_double(*e, "t0");
        if (cfg.t0 < 0.0 || cfg.t0 > cfg.sim.params.horizon)
            fail(e->line, "t0 must lie in [0, T]");
    }

    // Sweep.
    const Entry* sp = find("sweep_param");
    const Entry* sv = find("sweep_values");
    if (sp && !sv) fail(sp->line, "sweep_param needs sweep_values");
    if (sv && !sp) fail(sv->line, "sweep_values needs sweep_param");
    if (sp) {
        SweepSpec sweep;
        sweep.param = trim(sp->value);
        if (sweep.param != "eta" && sweep.param != "gamma" && sweep.param != "mu" &&
            sweep.param != "b")
            fail(sp->line, "sweep_param must be one of eta, gamma, mu, b");
        if (sweep.param == "mu" && cfg.sim.model.kind != ModelKind::ou)
            fail(sp->line, "sweeping 'mu' needs an ou model");
        if (sweep.param == "b" && cfg.sim.model.kind != ModelKind::abm)
            fail(sp->line, "sweeping 'b' needs an abm model");
        sweep.values = parse_double_list(*sv, "sweep_values");
        if (sweep.param == "eta")
            for (double v : sweep.values)
                if (v < 0.0) fail(sv->line, "swept eta values must be >= 0");
        if (sweep.param == "gamma")
            for (double v : sweep.values)
                if (!(v > 0.0)) fail(sv->line, "swept gamma values must be > 0");
        cfg.sweep = std::move(sweep);
    }

    // Output controls.
    if (const Entry* e = find("out")) cfg.output_dir = trim(e->value);
    if (const Entry* e = find("emit_trajectories"))
        cfg.emit_trajectories = parse_bool(*e, "emit_trajectories");
    if (const Entry* e = find("benchmark_pair"))
        cfg.benchmark_pair = parse_bool(*e, "benchmark_pair");
    if (const Entry* e = find("table_format")) {
        const std::string v = trim(e->value);
        if (v == "csv")
            cfg.table_format = TableFormat::csv;
        else if (v == "json")
            cfg.table_format = TableFormat::json;
        else
            fail(e->line, "unknown table_format '" + v + "' (csv, json)");
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const std::exception& ex) {
        throw std::runtime_error(path + ": " + ex.what());
    }
}

std::string emit_manifest(const RunConfig& cfg) {
    std::ostringstream out;
    const MidPriceModel& m = cfg.sim.model;
    out << "kind = " << (m.kind == ModelKind::ou ? "ou" : "abm") << "\n";
    if (m.kind == ModelKind::abm) {
        out << "b = " << exact(m.drift) << "\n";
    } else {
        out << "a = " << exact(m.reversion) << "\n";
        out << "mu = " << exact(m.mean) << "\n";
    }
    out << "sigma = " << exact(m.sigma) << "\n";
    out << "s0 = " << exact(m.s0) << "\n";
    out << "A = " << exact(cfg.sim.params.base_intensity) << "\n";
    out << "k = " << exact(cfg.sim.params.decay) << "\n";
    out << "T = " << exact(cfg.sim.params.horizon) << "\n";
    out << "gamma = " << exact(cfg.sim.params.gamma) << "\n";
    out << "eta = " << exact(cfg.sim.params.eta) << "\n";
    out << "penalty = " << (cfg.sim.params.penalty == PenaltyKind::one ? "one" : "square")
        << "\n";
    out << "strategy = " << strategy_name(cfg.sim.strategy) << "\n";
    out << "assume = " << assume_name(cfg.sim.assume) << "\n";
    out << "seed = " << cfg.sim.seed << "\n";
    out << "n_steps = " << cfg.sim.n_steps << "\n";
    out << "n_paths = " << cfg.sim.n_paths << "\n";
    out << "q0 = " << cfg.sim.q0 << "\n";
    out << "x0 = " << exact(cfg.sim.x0) << "\n";
    out << "threads = " << cfg.sim.threads << "\n";
    out << "t0 = " << exact(cfg.t0) << "\n";
    out << "ode_q_max = " << cfg.sim.ode_q_max << "\n";
    out << "ode_n_steps = " << cfg.sim.ode_n_steps << "\n";
    if (cfg.sweep) {
        out << "sweep_param = " << cfg.sweep->param << "\n";
        out << "sweep_values =";
        for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i)
            out << (i ? ", " : " ") << exact(cfg.sweep->values[i]);
        out << "\n";
    }
    out << "out = " << cfg.output_dir << "\n";
    out << "emit_trajectories = " << (cfg.emit_trajectories ? "true" : "false") << "\n";
    out << "benchmark_pair = " << (cfg.benchmark_pair ? "true" : "false") << "\n";
    out << "table_format = " << (cfg.table_format == TableFormat::csv ? "csv" : "json")
        << "\n";
    return out.str();
}

namespace {

SimConfig apply_sweep_value(const SimConfig& base, const std::string& param, double value) {
    SimConfig sim = base;
    if (param == "eta")
        sim.params.eta = value;
    else if (param == "gamma")
        sim.params.gamma = value;
    else if (param == "mu")
        sim.model.mean = value;
    else if (param == "b")
        sim.model.drift = value;
    else
        throw std::invalid_argument("unknown sweep parameter '" + param + "'");
    return sim;
}

StatsRecord single_sample_record(const PathResult& path) {
    // A one-path "ensemble": dispersion statistics have no meaning, so
    // every spread-like field carries the NaN sentinel.
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    StatsRecord rec;
    rec.n = 1;
    rec.mean = path.pnl_final;
    rec.std_dev = nan;
    rec.sharpe = nan;
    rec.skewness = nan;
    rec.kurtosis = nan;
    rec.jarque_bera = nan;
    rec.var5 = path.pnl_final;
    rec.var1 = path.pnl_final;
    rec.inv_mean = static_cast<double>(path.q_final);
    rec.inv_std = nan;
    rec.inv_skewness = nan;
    rec.inv_kurtosis = nan;
    rec.inv_jarque_bera = nan;
    rec.q90_lo = path.q_final;
    rec.q90_hi = path.q_final;
    return rec;
}

TableRow make_row(const SimConfig& sim) {
    const std::vector<PathResult> ensemble = run_monte_carlo(sim);

    TableRow row;
    row.strategy = strategy_name(sim.strategy);
    row.assume = assume_name(sim.assume);
    row.eta = sim.params.eta;
    row.gamma = sim.params.gamma;
    if (sim.model.kind == ModelKind::ou)
        row.mu = sim.model.mean;
    else
        row.b = sim.model.drift;

    if (ensemble.size() == 1) {
        row.stats = single_sample_record(ensemble.front());
        return row;
    }
    std::vector<double> pnl(ensemble.size()), inv(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        pnl[i] = ensemble[i].pnl_final;
        inv[i] = static_cast<double>(ensemble[i].q_final);
    }
    row.stats = summarize(pnl, inv);
    return row;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string prepare_output_dir(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + cfg.output_dir +
                                 "': " + ec.message());
    return cfg.output_dir;
}

void write_manifest(const RunConfig& cfg, const std::string& dir) {
    write_file(dir + "/manifest.cfg", emit_manifest(cfg));
}

}  // namespace

std::vector<TableRow> compute_table(const RunConfig& config) {
    std::vector<TableRow> rows;
    if (config.sweep) {
        for (double v : config.sweep->values)
            rows.push_back(make_row(apply_sweep_value(config.sim, config.sweep->param, v)));
    } else {
        rows.push_back(make_row(config.sim));
    }
    return rows;
}

std::string format_table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    out << "strategy,assume,eta,gamma,mu,b,"
           "pnl_mean,pnl_std,sharpe,skewness,kurtosis,jarque_bera,var5,var1,"
           "inv_mean,inv_std,inv_skewness,inv_kurtosis,inv_jarque_bera,q90_lo,q90_hi\n";
    for (const TableRow& r : rows) {
        out << r.strategy << ',' << r.assume << ',' << exact(r.eta) << ',' << exact(r.gamma)
            << ',' << (r.mu ? exact(*r.mu) : "") << ',' << (r.b ? exact(*r.b) : "") << ','
            << fixed6(r.stats.mean) << ',' << fixed6(r.stats.std_dev) << ','
            << fixed6(r.stats.sharpe) << ',' << fixed6(r.stats.skewness) << ','
            << fixed6(r.stats.kurtosis) << ',' << fixed6(r.stats.jarque_bera) << ','
            << fixed6(r.stats.var5) << ',' << fixed6(r.stats.var1) << ','
            << fixed6(r.stats.inv_mean) << ',' << fixed6(r.stats.inv_std) << ','
            << fixed6(r.stats.inv_skewness) << ',' << fixed6(r.stats.inv_kurtosis) << ','
            << fixed6(r.stats.inv_jarque_bera) << ',' << r.stats.q90_lo << ','
            << r.stats.q90_hi << '\n';
    }
    return out.str();
}

std::string format_table_json(const std::vector<TableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TableRow& r : rows) {
        nlohmann::json row;
        row["strategy"] = r.strategy;
        row["assume"] = r.assume;
        row["eta"] = r.eta;
        row["gamma"] = r.gamma;
        if (r.mu) row["mu"] = *r.mu;
        if (r.b) row["b"] = *r.b;
        row["pnl_mean"] = r.stats.mean;
        row["pnl_std"] = r.stats.std_dev;
        row["sharpe"] = r.stats.sharpe;
        row["skewness"] = r.stats.skewness;
        row["kurtosis"] = r.stats.kurtosis;
        row["jarque_bera"] = r.stats.jarque_bera;
        row["var5"] = r.stats.var5;
        row["var1"] = r.stats.var1;
        row["inv_mean"] = r.stats.inv_mean;
        row["inv_std"] = r.stats.inv_std;
        row["inv_skewness"] = r.stats.inv_skewness;
        row["inv_kurtosis"] = r.stats.inv_kurtosis;
        row["inv_jarque_bera"] = r.stats.inv_jarque_bera;
        row["q90_lo"] = r.stats.q90_lo;
        row["q90_hi"] = r.stats.q90_hi;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

void cmd_quotes(const RunConfig& config, std::ostream& out) {
    const SimConfig& sim = config.sim;
    const QuotePolicy policy(sim);
    const QuotePair q = policy.at(config.t0, sim.model.s0, sim.q0);
    out << "delta_ask = " << fixed6(q.delta_ask) << "\n"
        << "delta_bid = " << fixed6(q.delta_bid) << "\n"
        << "spread = " << fixed6(q.spread) << "\n"
        << "indifference = " << fixed6(q.indifference) << "\n";
}

std::string cmd_table(const RunConfig& config) {
    const std::vector<TableRow> rows = compute_table(config);
    const std::string dir = prepare_output_dir(config);
    const bool csv = config.table_format == TableFormat::csv;
    const std::string path = dir + (csv ? "/table.csv" : "/table.json");
    write_file(path, csv ? format_table_csv(rows) : format_table_json(rows));
    write_manifest(config, dir);
    return path;
}

std::string cmd_path(const RunConfig& config) {
    SimConfig sim = config.sim;
    sim.record_trajectory = true;

    const PathResult primary = simulate_path(sim, 0);
    std::optional<PathResult> bench;
    if (config.benchmark_pair) {
        SimConfig bench_sim = sim;
        bench_sim.assume = QuoteAssumption::martingale;
        bench = simulate_path(bench_sim, 0);
    }

    std::ostringstream out;
    out << "t,s,ask,bid,q,x,pnl";
    if (bench) out << ",bench_q,bench_x,bench_pnl";
    out << "\n";
    for (std::size_t i = 0; i < primary.trajectory.size(); ++i) {
        const TrajectoryPoint& p = primary.trajectory[i];
        out << fixed6(p.t) << ',' << fixed6(p.s) << ',' << fixed6(p.s + p.delta_ask) << ','
            << fixed6(p.s - p.delta_bid) << ',' << p.q << ',' << fixed6(p.x) << ','
            << fixed6(p.x + static_cast<double>(p.q) * p.s);
        if (bench) {
            const TrajectoryPoint& b = bench->trajectory[i];
            out << ',' << b.q << ',' << fixed6(b.x) << ','
                << fixed6(b.x + static_cast<double>(b.q) * b.s);
        }
        out << "\n";
    }

    const std::string dir = prepare_output_dir(config);
    const std::string path = dir + "/path.csv";
    write_file(path, out.str());
    write_manifest(config, dir);
    return path;
}

std::string cmd_ode(const RunConfig& config) {
    const SimConfig& sim = config.sim;
    const MidPriceModel quote_model = sim.assume == QuoteAssumption::martingale
                                          ? sim.model.as_martingale()
                                          : sim.model;
    StrategyParams params = sim.params;
    params.utility = Utility::exponential;
    const OdeSolution solution = solve_backward(
        OdeSystem::from_model(quote_model, params, sim.ode_q_max, sim.ode_n_steps));

    std::ostringstream out;
    out << "t,q,v\n";
    for (std::size_t i = 0; i < solution.times().size(); ++i) {
        for (long q = -solution.q_max(); q <= solution.q_max(); ++q)
            out << fixed6(solution.times()[i]) << ',' << q << ','
                << fmt("%.12g", solution.value(i, q)) << "\n";
    }

    const std::string dir = prepare_output_dir(config);
    const std::string path = dir + "/ode_grid.csv";
    write_file(path, out.str());
    write_manifest(config, dir);
    return path;
}

}  // namespace mmlab
