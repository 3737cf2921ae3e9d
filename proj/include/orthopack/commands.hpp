#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "orthopack/coxeter.hpp"
#include "orthopack/tiling.hpp"
#include "orthopack/volume.hpp"

namespace orthopack {

enum class Command { Cell, Inball, Horoball, Optimize, Tiling, Export, Table };

std::string_view to_string(Command c);

struct RunConfig {
    Command command = Command::Cell;
    SchlafliSymbol symbol{3, 3};
    double placement_t = 0.0;
    double tol = kDefaultVolumeTol;
    int crowns = 0;
    CrownMode crown_mode = CrownMode::Face;
    int resolution = 64;
    std::string format; // empty: command default
    std::string out;    // empty: stdout only
    bool allow_nonstandard = false;
    std::string horoball_mode = "one"; // one | two
    int vertex = 2;
    std::optional<double> touch_t;
    bool model_sphere = false;
};

/// Throws InvalidInput with a message naming the offending flag.
void validate(const RunConfig& config);

// Each command returns what goes to stdout and writes --out if requested.
std::string cmd_cell(const RunConfig& config);
std::string cmd_inball(const RunConfig& config);
std::string cmd_horoball(const RunConfig& config);
std::string cmd_optimize(const RunConfig& config);
std::string cmd_tiling(const RunConfig& config);
std::string cmd_export(const RunConfig& config);
std::string cmd_table(const RunConfig& config);

std::string run(const RunConfig& config);

} // namespace orthopack
