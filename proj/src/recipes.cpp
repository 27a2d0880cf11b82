#include "dqpt/recipes.hpp"

#include <map>

#include "dqpt/errors.hpp"

namespace dqpt {

namespace {

const std::map<std::string, std::string> recipes = {
    {"fig1",
     "# non-Hermitian Kitaev chain, quench across the boundary ellipse\n"
     "model = kitaev\n"
     "params_initial.t1 = 1\n"
     "params_initial.delta = 0.9\n"
     "params_initial.mu_r = 0.25\n"
     "params_initial.gamma = 0.5\n"
     "params_final.t1 = 1\n"
     "params_final.delta = 0.9\n"
     "params_final.mu_r = 1.7\n"
     "params_final.gamma = 0.5\n"
     "n_momenta = 2000\n"
     "t_max = 6\n"
     "n_times = 1201\n"
     "diagnostics = rate,dtop,fisher,pkt\n"
     "n_max = 3\n"
     "half_bz = true\n"
     "output_dir = out_fig1\n"},
    {"fig2a",
     "model = kitaev\n"
     "params_initial.t1 = 1\n"
     "params_initial.delta = 0.9\n"
     "params_initial.mu_r = 0.3\n"
     "params_initial.gamma = 0.5\n"
     "params_final.t1 = 1\n"
     "params_final.delta = 0.9\n"
     "params_final.mu_r = 1.7\n"
     "params_final.gamma = 0.5\n"
     "n_momenta = 2000\n"
     "t_max = 6\n"
     "n_times = 1201\n"
     "diagnostics = rate,dtop\n"
     "half_bz = true\n"
     "output_dir = out_fig2a\n"},
    {"fig2b",
     "model = kitaev\n"
     "params_initial.t1 = 1\n"
     "params_initial.delta = 0.9\n"
     "params_initial.mu_r = -0.6\n"
     "params_initial.gamma = 0.5\n"
     "params_final.t1 = 1\n"
     "params_final.delta = 0.9\n"
     "params_final.mu_r = 0.7\n"
     "params_final.gamma = 0.5\n"
     "n_momenta = 2000\n"
     "t_max = 6\n"
     "n_times = 1201\n"
     "diagnostics = rate,dtop\n"
     "half_bz = true\n"
     "output_dir = out_fig2b\n"},
    {"fig2c",
     "model = kitaev\n"
     "params_initial.t1 = 1\n"
     "params_initial.delta = 0.9\n"
     "params_initial.mu_r = 1.7\n"
     "params_initial.gamma = 0.5\n"
     "params_final.t1 = 1\n"
     "params_final.delta = 0.9\n"
     "params_final.mu_r = -0.3\n"
     "params_final.gamma = 0.5\n"
     "n_momenta = 2000\n"
     "t_max = 6\n"
     "n_times = 1201\n"
     "diagnostics = rate,dtop\n"
     "half_bz = true\n"
     "output_dir = out_fig2c\n"},
    {"fig3",
     "# Fisher-zero curves and p(k_c, t) for the fig1 quench\n"
     "model = kitaev\n"
     "params_initial.t1 = 1\n"
     "params_initial.delta = 0.9\n"
     "params_initial.mu_r = 0.25\n"
     "params_initial.gamma = 0.5\n"
     "params_final.t1 = 1\n"
     "params_final.delta = 0.9\n"
     "params_final.mu_r = 1.7\n"
     "params_final.gamma = 0.5\n"
     "n_momenta = 2000\n"
     "t_max = 6\n"
     "n_times = 1201\n"
     "diagnostics = fisher,pkt\n"
     "n_max = 3\n"
     "output_dir = out_fig3\n"},
    {"fig4",
     "# next-nearest-neighbor chain\n"
     "model = kitaev_nnn\n"
     "params_initial.t1 = 1\n"
     "params_initial.t2 = 0.7\n"
     "params_initial.delta = 0.9\n"
     "params_initial.mu_r = -0.5\n"
     "params_initial.gamma = 0.5\n"
     "params_final.t1 = 1\n"
     "params_final.t2 = 0.7\n"
     "params_final.delta = 0.9\n"
     "params_final.mu_r = 2.2\n"
     "params_final.gamma = 0.5\n"
     "n_momenta = 2000\n"
     "t_max = 6\n"
     "n_times = 1201\n"
     "diagnostics = rate,dtop,fisher,pkt\n"
     "n_max = 3\n"
     "half_bz = true\n"
     "output_dir = out_fig4\n"},
};

}  // namespace

const std::vector<std::string>& recipe_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : recipes) v.push_back(k);
        return v;
    }();
    return names;
}

const std::string& recipe_text(const std::string& name) {
    const auto it = recipes.find(name);
    if (it == recipes.end()) throw ConfigError("unknown recipe '" + name + "'");
    return it->second;
}

}  // namespace dqpt
