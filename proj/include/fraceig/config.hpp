#ifndef FRACEIG_CONFIG_HPP
#define FRACEIG_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraceig/assembly.hpp"
#include "fraceig/solver.hpp"

namespace fraceig {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat `block.key = value` configuration; unknown keys are a hard error.
struct RunConfig {
    // kernel
    double s = 0.5;
    double p = 2.0;
    std::string multiplier = "one";
    double lam_lo = 1.0;
    double lam_hi = 1.0;
    // grid
    int dim = 1;
    double a = -1.0, b = 1.0;
    int N = 64;
    Box box{0, 0, 1, 1};
    double h = 0.125;
    std::string mask = "all";
    // assembly
    AssemblyOptions assembly;
    // solve
    SolveOptions solve;
    // output
    std::string out_dir = ".";
    std::vector<std::string> formats{"json"};
    bool dump_eigenfunction = false;

    std::string canonical;  // sorted key=value lines, the hashed content
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// FNV-1a over the canonical key=value lines, as a hex string.
std::string config_hash(const RunConfig& cfg);

Kernel make_kernel(const RunConfig& cfg);
Grid make_grid(const RunConfig& cfg);

}  // namespace fraceig

#endif
