#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqpt/recipes.hpp"
#include "dqpt/run.hpp"
#include "dqpt/selftest.hpp"

namespace {

struct Overrides {
    std::vector<std::pair<std::string, std::string>> kv;

    void attach(CLI::App& app) {
        static const std::vector<std::pair<std::string, std::string>> flags = {
            {"--n-momenta", "n_momenta"}, {"--t-max", "t_max"},     {"--output-dir", "output_dir"},
            {"--n-times", "n_times"},     {"--n-max", "n_max"},     {"--half-bz", "half_bz"},
            {"--diagnostics", "diagnostics"},
        };
        for (const auto& [flag, key] : flags) {
            const std::string k = key;
            app.add_option_function<std::string>(
                flag, [this, k](const std::string& v) { kv.emplace_back(k, v); },
                "override config key " + k);
        }
    }

    void apply(dqpt::RunConfig& cfg) const {
        for (const auto& [k, v] : kv) dqpt::apply_key(cfg, k, v);
    }
};

int run_config(dqpt::RunConfig cfg, const Overrides& ov) {
    ov.apply(cfg);
    const auto tables = dqpt::run(cfg);
    for (const auto& t : tables)
        std::printf("wrote %s/%s.csv (%zu rows, %zu masked)\n", cfg.output_dir.c_str(),
                    t.name().c_str(), t.n_rows(), t.n_masked());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biorthogonal DQPT diagnostics for quenched non-Hermitian Kitaev chains"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides run_ov;
    CLI::App* cmd_run = app.add_subcommand("run", "run the sweeps of a config file");
    cmd_run->add_option("--config", config_path, "config file (key = value lines)")->required();
    run_ov.attach(*cmd_run);

    std::uint64_t seed = 1;
    CLI::App* cmd_selftest = app.add_subcommand("selftest", "reduced-scale invariant suite");
    cmd_selftest->add_option("--seed", seed, "seed for randomized draws");

    std::string recipe_name;
    Overrides recipe_ov;
    CLI::App* cmd_recipe = app.add_subcommand("recipe", "run a built-in figure recipe");
    cmd_recipe->add_option("name", recipe_name, "one of fig1, fig2a, fig2b, fig2c, fig3, fig4")
        ->required();
    recipe_ov.attach(*cmd_recipe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cmd_run->parsed()) return run_config(dqpt::load_config(config_path), run_ov);
        if (cmd_recipe->parsed())
            return run_config(dqpt::parse_config(dqpt::recipe_text(recipe_name)), recipe_ov);
        if (cmd_selftest->parsed()) {
            const dqpt::SelftestReport report = dqpt::selftest(seed);
            for (const auto& item : report.items)
                std::printf("%-28s %s  (%s)\n", item.name.c_str(), item.pass ? "PASS" : "FAIL",
                            item.detail.c_str());
            if (!report.all_pass()) {
                std::printf("selftest: FAIL\n");
                return 3;
            }
            std::printf("selftest: PASS\n");
            return 0;
        }
    } catch (const dqpt::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const dqpt::DqptError& e) {
        std::fprintf(stderr, "computation error: %s\n", e.what());
        return 2;
    }
    return 1;
}
