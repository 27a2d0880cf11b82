#ifndef DQPT_RECIPES_HPP
#define DQPT_RECIPES_HPP

#include <string>
#include <vector>

namespace dqpt {

// Built-in sweep configurations, mirrored one-to-one by the files under
// recipes/. Names: fig1, fig2a, fig2b, fig2c, fig3, fig4.
const std::vector<std::string>& recipe_names();
const std::string& recipe_text(const std::string& name);  // throws ConfigError if unknown

}  // namespace dqpt

#endif
