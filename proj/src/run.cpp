#include "dqpt/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "dqpt/fisher.hpp"
#include "dqpt/topology.hpp"

namespace dqpt {

namespace {

const std::set<std::string> known_diagnostics = {"rate", "self_normal_rate", "dtop",
                                                 "fisher", "pkt", "phase_boundary"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad real value for " + key + ": '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: bad boolean value for " + key + ": '" + v + "'");
}

bool apply_params_key(ModelParams& p, const std::string& field, const std::string& key,
                      const std::string& value) {
    if (field == "t1") p.t1 = parse_real(key, value);
    else if (field == "t2") p.t2 = parse_real(key, value);
    else if (field == "delta") p.delta = parse_real(key, value);
    else if (field == "mu_r") p.mu_r = parse_real(key, value);
    else if (field == "gamma") p.gamma = parse_real(key, value);
    else return false;
    return true;
}

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "model") {
        if (value != "kitaev" && value != "kitaev_nnn")
            throw ConfigError("config: model must be kitaev or kitaev_nnn");
        cfg.model = value;
        return;
    }
    if (key.rfind("params_initial.", 0) == 0) {
        if (apply_params_key(cfg.params_initial, key.substr(15), key, value)) return;
    } else if (key.rfind("params_final.", 0) == 0) {
        if (apply_params_key(cfg.params_final, key.substr(13), key, value)) return;
    } else if (key == "n_momenta") {
        cfg.n_momenta = static_cast<std::size_t>(parse_int(key, value));
        return;
    } else if (key == "t_max") {
        cfg.t_max = parse_real(key, value);
        return;
    } else if (key == "n_times") {
        cfg.n_times = static_cast<std::size_t>(parse_int(key, value));
        return;
    } else if (key == "n_max") {
        cfg.n_max = static_cast<int>(parse_int(key, value));
        return;
    } else if (key == "half_bz") {
        cfg.half_bz = parse_bool(key, value);
        return;
    } else if (key == "output_dir") {
        cfg.output_dir = value;
        return;
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        return;
    } else if (key == "diagnostics") {
        std::set<std::string> ds;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            if (!known_diagnostics.count(item))
                throw ConfigError("config: unknown diagnostic '" + item + "'");
            ds.insert(item);
        }
        cfg.diagnostics = ds;
        return;
    }
    throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config(os.str());
}

void RunConfig::validate() const {
    if (model != "kitaev" && model != "kitaev_nnn")
        throw ConfigError("RunConfig: model must be kitaev or kitaev_nnn");
    if (model == "kitaev" && (params_initial.t2 != 0.0 || params_final.t2 != 0.0))
        throw ConfigError("RunConfig: model kitaev forces t2 = 0");
    if (n_momenta < 64 || n_momenta % 2 != 0)
        throw ConfigError("RunConfig: n_momenta must be >= 64 and even");
    if (!(t_max > 0.0)) throw ConfigError("RunConfig: t_max must be positive");
    if (n_times < 2) throw ConfigError("RunConfig: n_times must be >= 2");
    if (n_max < 0) throw ConfigError("RunConfig: n_max must be >= 0");
    for (const auto& d : diagnostics)
        if (!known_diagnostics.count(d)) throw ConfigError("RunConfig: unknown diagnostic " + d);
    params_initial.validate();
    params_final.validate();
}

QuenchSpec RunConfig::quench() const {
    QuenchSpec q;
    q.initial = params_initial;
    q.final_params = params_final;
    q.n_momenta = n_momenta;
    q.t_max = t_max;
    q.n_times = n_times;
    return q;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    auto params_echo = [](const std::string& prefix, const ModelParams& p,
                          std::vector<std::pair<std::string, std::string>>& out) {
        out.emplace_back(prefix + ".t1", format_double(p.t1));
        out.emplace_back(prefix + ".t2", format_double(p.t2));
        out.emplace_back(prefix + ".delta", format_double(p.delta));
        out.emplace_back(prefix + ".mu_r", format_double(p.mu_r));
        out.emplace_back(prefix + ".gamma", format_double(p.gamma));
    };
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("version", artifact_version);
    out.emplace_back("model", model);
    params_echo("params_initial", params_initial, out);
    params_echo("params_final", params_final, out);
    out.emplace_back("n_momenta", std::to_string(n_momenta));
    out.emplace_back("t_max", format_double(t_max));
    out.emplace_back("n_times", std::to_string(n_times));
    std::string ds;
    for (const auto& d : diagnostics) ds += (ds.empty() ? "" : ",") + d;
    out.emplace_back("diagnostics", ds);
    out.emplace_back("n_max", std::to_string(n_max));
    out.emplace_back("half_bz", half_bz ? "true" : "false");
    out.emplace_back("output_dir", output_dir);
    out.emplace_back("seed", std::to_string(seed));
    return out;
}

namespace {

void stamp(SeriesTable& tab, const RunConfig& cfg) {
    for (const auto& [k, v] : cfg.echo()) tab.add_metadata(k, v);
}

// Distinct critical momenta, one per dk-sized cluster, in event order.
std::vector<DqptEvent> unique_momenta(const std::vector<DqptEvent>& events, double dk) {
    std::vector<DqptEvent> out;
    for (const DqptEvent& e : events) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const DqptEvent& u) {
            return std::abs(u.k_c - e.k_c) <= dk;
        });
        if (!dup) out.push_back(e);
    }
    return out;
}

}  // namespace

std::vector<SeriesTable> run(const RunConfig& cfg) {
    cfg.validate();
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const auto out_path = [&](const std::string& file) {
        return (fs::path(cfg.output_dir) / file).string();
    };

    const QuenchSpec q = cfg.quench();
    std::vector<SeriesTable> tables;

    const bool want_rate = cfg.diagnostics.count("rate") || cfg.diagnostics.count("self_normal_rate");
    const bool want_dtop = cfg.diagnostics.count("dtop") > 0;
    const bool want_fisher = cfg.diagnostics.count("fisher") > 0;
    const bool want_pkt = cfg.diagnostics.count("pkt") > 0;

    std::unique_ptr<QuenchWorkspace> ws;
    if (want_rate || want_dtop || want_pkt) ws = std::make_unique<QuenchWorkspace>(q);

    if (want_rate) {
        const RateSeries rs = rate_series(*ws);
        SeriesTable tab("rate", {"t", "LR_bio", "LR_selfnormal"});
        stamp(tab, cfg);
        for (std::size_t i = 0; i < rs.t.size(); ++i)
            tab.add_row({rs.t[i], rs.bio[i], rs.self_normal[i]});
        tab.write_csv(out_path("rate.csv"));
        tables.push_back(std::move(tab));
    }

    if (want_dtop) {
        const DtopSeries ds = dtop_series(*ws, cfg.half_bz);
        SeriesTable tab("dtop", {"t", "nu"});
        stamp(tab, cfg);
        for (std::size_t i = 0; i < ds.t.size(); ++i) tab.add_row({ds.t[i], ds.nu[i]});
        tab.write_csv(out_path("dtop.csv"));
        tables.push_back(std::move(tab));
    }

    std::vector<DqptEvent> events;
    if (want_fisher || want_pkt)
        events = find_events(q, cfg.n_max, std::max<std::size_t>(q.n_momenta, 256));

    if (want_fisher) {
        const auto branches = trace_branches(q, cfg.n_max, std::max<std::size_t>(q.n_momenta, 256));
        for (const FisherBranch& br : branches) {
            SeriesTable tab("fisher_n" + std::to_string(br.n),
                            {"k", "Re_Z", "Im_Z", "Re_t", "Im_t"});
            stamp(tab, cfg);
            for (const FisherSample& s : br.samples) {
                if (!s.valid) {
                    tab.add_row({s.k, std::nan(""), std::nan(""), std::nan(""), std::nan("")});
                    continue;
                }
                // Z = i t
                tab.add_row({s.k, -s.t.imag(), s.t.real(), s.t.real(), s.t.imag()});
            }
            tab.write_csv(out_path("fisher_n" + std::to_string(br.n) + ".csv"));
            tables.push_back(std::move(tab));
        }

        SeriesTable ev("events", {"n", "k_c", "t_c"});
        stamp(ev, cfg);
        for (const DqptEvent& e : events) ev.add_row({static_cast<double>(e.n), e.k_c, e.t_c});
        ev.write_csv(out_path("events.csv"));
        tables.push_back(std::move(ev));
    }

    if (want_pkt) {
        const double dk = two_pi / static_cast<double>(q.n_momenta);
        const auto kcs = unique_momenta(events, dk);
        std::vector<std::string> cols = {"t"};
        for (std::size_t i = 0; i < kcs.size(); ++i) cols.push_back("p_" + std::to_string(i));
        SeriesTable tab("pkt", cols);
        stamp(tab, cfg);
        std::vector<ModeData> mds;
        for (std::size_t i = 0; i < kcs.size(); ++i) {
            tab.add_metadata("k_c_" + std::to_string(i), format_double(kcs[i].k_c));
            mds.push_back(make_mode_data(q.initial, q.final_params, kcs[i].k_c));
        }
        for (std::size_t i = 0; i < q.n_times; ++i) {
            std::vector<double> row = {q.t(i)};
            for (const ModeData& md : mds)
                row.push_back(transition_probability(mode_amplitudes(md, q.t(i))));
            tab.add_row(row);
        }
        tab.write_csv(out_path("pkt.csv"));
        tables.push_back(std::move(tab));
    }

    if (cfg.diagnostics.count("phase_boundary")) {
        SeriesTable tab("boundary", {"mu_r", "gamma", "residual"});
        stamp(tab, cfg);
        ModelParams p = cfg.params_final;
        const double gmax = 1.25 * std::abs(p.delta);
        const std::size_t nm = 101, ng = 51;
        for (std::size_t i = 0; i < nm; ++i) {
            p.mu_r = -2.5 + 5.0 * static_cast<double>(i) / static_cast<double>(nm - 1);
            for (std::size_t j = 0; j < ng; ++j) {
                p.gamma = -gmax + 2.0 * gmax * static_cast<double>(j) / static_cast<double>(ng - 1);
                tab.add_row({p.mu_r, p.gamma, phase_boundary_residual(p)});
            }
        }
        tab.write_csv(out_path("boundary.csv"));
        tables.push_back(std::move(tab));
    }

    return tables;
}

}  // namespace dqpt
