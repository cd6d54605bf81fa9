#pragma once

//
// Named symbol factories shared by the CLI, the python module and the test
// suites. Specs look like "name" or "name:key=value,key=value", e.g.
// "bessel:s=1" or "bracket_power:m=2".
//

#include <string>
#include <vector>

#include "wpdo/symbols.hpp"

namespace wpdo {

/// Instantiate a built-in symbol from a spec string.
Symbol builtin_symbol(const std::string& spec, const WeightFunction& w = bracket_weight());

/// Torus-side catalogue; include_broken adds the deliberately ill-declared
/// symbols used to exercise the rejection paths.
std::vector<std::string> builtin_torus_names(bool include_broken = false);

/// Lattice-side catalogue.
std::vector<std::string> builtin_lattice_names();

/// Weight from a spec string: "bracket", "constant", "even_power:p=2".
WeightFunction builtin_weight(const std::string& spec);

}  // namespace wpdo
