// runner.hpp — command-line front end as a library (thin main in tools/).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tcg/ops.hpp"

namespace tcg {

// Parses and executes a full command line. Exit codes: 0 success,
// 2 configuration/parse error, 3 coarse-graining assumption violation,
// 4 integration blowup.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Exposed for tests: sparse "index:amplitude" initial-state parser with
// 1-based indices and complex amplitudes written as re+imi.
ComplexVector parse_initial_state(const std::string& spec, int dim);
Complex parse_complex_amplitude(const std::string& text);

} // namespace tcg
