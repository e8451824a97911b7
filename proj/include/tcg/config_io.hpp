// config_io.hpp — declarative model-file reading and writing.
//
// Format (TOML-style subset): top-level `dim`, `manifold`, optional `frame`
// and dense `h0` (row-major re/im pairs), then repeated [[drive]] and
// [[decay]] blocks. Level indices are 1-based in files.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tcg/model.hpp"

namespace tcg {

struct ModelConfig {
    DrivenLevelSystem system;
    std::vector<double> frame;  // empty when the file declares none
};

ModelConfig read_model_config(std::istream& in);
ModelConfig read_model_config_file(const std::string& path);

std::string write_model_config(const DrivenLevelSystem& sys,
                               const std::vector<double>& frame);

bool models_identical(const DrivenLevelSystem& a, const DrivenLevelSystem& b);

} // namespace tcg
