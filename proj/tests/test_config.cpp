// test_config.cpp — model-file parsing, writing and round-trips.

#include <doctest.h>

#include <sstream>

#include "tcg/config_io.hpp"
#include "tcg/errors.hpp"
#include "tcg/presets.hpp"

using namespace tcg;

namespace {

ModelConfig parse(const std::string& text) {
    std::istringstream in(text);
    return read_model_config(in);
}

const char* kSample = R"(# three-level Raman model
dim = 3
manifold = ["lower", "lower", "upper"]
frame = [0.0, 0.0, 1.0]

[[drive]]
lower = 1
upper = 3
rabi_re = 0.1
rabi_im = 0.0
detuning = 1.0

[[drive]]
lower = 2
upper = 3
rabi_re = 0.1
detuning = 1.0   # rabi_im defaults to zero

[[decay]]
target = 1
source = 3
rate = 0.1

[[decay]]
target = 2
source = 3
rate = 0.1
)";

} // namespace

TEST_CASE("read_model_config parses the documented schema") {
    const ModelConfig config = parse(kSample);
    CHECK(config.system.dim == 3);
    REQUIRE(config.system.drives.size() == 2);
    CHECK(config.system.drives[0].lower == 0);
    CHECK(config.system.drives[0].upper == 2);
    CHECK(config.system.drives[1].rabi == Complex(0.1, 0.0));
    REQUIRE(config.system.decays.size() == 2);
    CHECK(config.system.decays[1].target == 1);
    CHECK(config.system.manifold[2] == Manifold::Upper);
    REQUIRE(config.frame.size() == 3);
    CHECK(config.frame[2] == 1.0);
    CHECK(config.system.h0.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("read_model_config parses a dense h0") {
    const ModelConfig config = parse(R"(
dim = 2
manifold = ["lower", "upper"]
h0 = [0.5, 0.0, 0.0, 0.25, 0.0, -0.25, -0.5, 0.0]
)");
    CHECK(config.system.h0(0, 0) == Complex(0.5, 0.0));
    CHECK(config.system.h0(0, 1) == Complex(0.0, 0.25));
    CHECK(config.system.h0(1, 0) == Complex(0.0, -0.25));
    CHECK(config.system.h0(1, 1) == Complex(-0.5, 0.0));
}

TEST_CASE("read_model_config normalizes upper-first drives") {
    const ModelConfig config = parse(R"(
dim = 2
manifold = ["lower", "upper"]

[[drive]]
lower = 2
upper = 1
rabi_re = 0.1
rabi_im = 0.05
detuning = 1.0
)");
    REQUIRE(config.system.drives.size() == 1);
    CHECK(config.system.drives[0].lower == 0);
    CHECK(config.system.drives[0].upper == 1);
    CHECK(config.system.drives[0].rabi == Complex(0.1, -0.05));
    CHECK(config.system.drives[0].detuning == -1.0);
}

TEST_CASE("read_model_config rejects malformed input") {
    CHECK_THROWS_AS(parse("manifold = [\"lower\"]\n"), ConfigError);  // missing dim
    CHECK_THROWS_AS(parse("dim = 2\n"), ConfigError);                 // missing manifold
    CHECK_THROWS_AS(parse("dim = 2\nmanifold = [\"lower\", \"up\"]\n"), ConfigError);
    CHECK_THROWS_AS(parse("dim = 2\nmanifold = [\"lower\", \"upper\"]\nbogus = 1\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse("dim = 2\ndim = 2\nmanifold = [\"lower\", \"upper\"]\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse("dim = 2\nmanifold = [\"lower\", \"upper\"]\nh0 = [1, 2]\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse("dim = 2\nmanifold = [\"lower\", \"upper\"]\nframe = [0.0\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse("dim = x\nmanifold = []\n"), ConfigError);
    CHECK_THROWS_AS(parse("dim = 2\nmanifold = [\"lower\", \"upper\"]\n[[oops]]\n"),
                    ConfigError);

    // Level indices outside the declared dimension.
    CHECK_THROWS_AS(parse(R"(
dim = 2
manifold = ["lower", "upper"]

[[decay]]
target = 1
source = 5
rate = 0.1
)"),
                    ConfigError);
}

TEST_CASE("every preset round-trips through the config format") {
    for (const auto& name : preset_names()) {
        const ScenarioPreset preset = get_preset(name);
        const std::string text = write_model_config(preset.system, preset.frame);
        std::istringstream in(text);
        const ModelConfig reread = read_model_config(in);
        CHECK(models_identical(reread.system, preset.system));
        CHECK(reread.frame == preset.frame);
    }
}

TEST_CASE("round-trip preserves a dense h0 exactly") {
    DrivenLevelSystem sys = get_preset("twolevel").system;
    sys.h0(0, 0) = 0.123456789012345678;
    sys.h0(1, 1) = -1.0 / 3.0;
    sys.h0(0, 1) = Complex(0.0, 1e-7);
    sys.h0(1, 0) = Complex(0.0, -1e-7);
    const std::string text = write_model_config(sys, {});
    std::istringstream in(text);
    const ModelConfig reread = read_model_config(in);
    CHECK(models_identical(reread.system, sys));
}
