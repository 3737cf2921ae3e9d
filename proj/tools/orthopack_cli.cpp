#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "orthopack/commands.hpp"
#include "orthopack/error.hpp"

using namespace orthopack;

int main(int argc, char** argv) {
    CLI::App app{"Packings in truncated Coxeter orthoschemes {inf,q,r,inf}"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string symbol = "inf,3,3,inf";
    std::string crown_mode = "face";
    double touch_t = 0.0;

    const std::map<std::string, Command> commands{
        {"cell", Command::Cell},         {"inball", Command::Inball}, {"horoball", Command::Horoball},
        {"optimize", Command::Optimize}, {"tiling", Command::Tiling}, {"export", Command::Export},
        {"table", Command::Table},
    };
    const std::map<std::string, std::string> help{
        {"cell", "normals, vertices and residuals of the cell"},
        {"inball", "largest inscribed ball and its density"},
        {"horoball", "one maximal horoball, or two tangent ones at a0 and a2"},
        {"optimize", "scan the two-horoball density over the feasible touching interval"},
        {"tiling", "expand the reflection tiling and check the transported packing"},
        {"export", "write meshes of the cell, balls and horoballs"},
        {"table", "densities for all eight symbols"},
    };

    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, cmd] : commands) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        subs[name] = sub;
        if (cmd != Command::Table)
            sub->add_option("--symbol", symbol, "Schlafli symbol, e.g. inf,3,3,inf")->capture_default_str();
        sub->add_option("--placement-t", cfg.placement_t, "free parameter of the normal construction")
            ->capture_default_str();
        sub->add_option("--tol", cfg.tol, "relative volume tolerance")->capture_default_str();
        sub->add_option("--format", cfg.format, "text|json|csv, or obj|ply|json for scenes");
        sub->add_option("--out", cfg.out, "output file");
        sub->add_flag("--allow-nonstandard-symbol", cfg.allow_nonstandard,
                      "accept (q,r) outside the eight listed symbols");
        if (cmd == Command::Horoball || cmd == Command::Tiling || cmd == Command::Export) {
            sub->add_option("--mode", cfg.horoball_mode, "one|two")->capture_default_str();
            sub->add_option("--vertex", cfg.vertex, "vertex of the single horoball")->capture_default_str();
            sub->add_option("--touch-t", touch_t, "touching parameter for two horoballs");
        }
        if (cmd == Command::Tiling || cmd == Command::Export) {
            sub->add_option("--crowns", cfg.crowns, "crown depth 0..3")->capture_default_str();
            sub->add_option("--crown-mode", crown_mode, "face|vertex")->capture_default_str();
            sub->add_option("--resolution", cfg.resolution, "mesh resolution")->capture_default_str();
        }
        if (cmd == Command::Export)
            sub->add_flag("--model-sphere", cfg.model_sphere, "include the unit sphere");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) {
                cfg.command = commands.at(name);
                if (sub->get_option_no_throw("--touch-t") && sub->count("--touch-t"))
                    cfg.touch_t = touch_t;
            }
        cfg.crown_mode = parse_crown_mode(crown_mode);
        if (cfg.command != Command::Table)
            cfg.symbol = SchlafliSymbol::parse(symbol);
        std::cout << run(cfg);
        std::cout.flush();
        if (!std::cout)
            throw IoError("failed writing to stdout");
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
