#pragma once

#include <string>
#include <vector>

#include "wva/noise.hpp"

namespace wva {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string axis = "delta";  // alpha2 | delta | gamma
    std::string scale = "log";   // linear | log
    double start = 1e-4;
    double stop = 0.5;
    int points = 500;
    std::vector<double> deltas;  // extra post-selection series for gamma sweeps

    bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
    std::string path = "sweep.csv";
    std::string format = "csv"; // csv | json

    bool operator==(const OutputSpec&) const = default;
};

struct Config {
    SetupParams setup;
    NoiseModel noise;
    RunConfig run;
    SweepSpec sweep;
    OutputSpec output;

    bool operator==(const Config& other) const;
};

/// Angle values accept "pi", "2pi", "pi*x", "2pi*x", "pi/x", "2pi/x" sugar
/// (optionally signed) in addition to plain numbers.
double parse_angle(const std::string& text);

/// Flat key-value format with dotted section names (setup.phi0 = 2pi*1e-5).
/// Unknown keys raise ConfigError naming the key; absent keys keep the values
/// already in `base`. noise.shot_var defaults to 1/(2 |alpha|^2) when the file
/// does not set it.
Config parse_config_text(const std::string& text, Config base = Config{});
Config parse_config_file(const std::string& path, Config base = Config{});

/// Emits every key; parse_config_text(emit_config(c)) == c.
std::string emit_config(const Config& c);

std::vector<std::string> preset_names();
Config preset(const std::string& name); // throws ConfigError for unknown names

/// Expands the sweep grid (linear or log spaced, inclusive endpoints).
std::vector<double> make_grid(const SweepSpec& spec);

} // namespace wva
