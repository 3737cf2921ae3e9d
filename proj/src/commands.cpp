#include "orthopack/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"
#include "orthopack/error.hpp"
#include "orthopack/horoball.hpp"
#include "orthopack/inball.hpp"
#include "orthopack/scene.hpp"

namespace orthopack {

namespace {

using nlohmann::json;

json to_json(const LorentzVector& x) {
    return json::array({x[0], x[1], x[2], x[3]});
}

double tidy(double v) {
    return std::abs(v) < 5e-10 ? 0.0 : v;
}

std::string vec_text(const LorentzVector& x) {
    return fmt::format("({:.9f}, {:.9f}, {:.9f}, {:.9f})", tidy(x[0]), tidy(x[1]), tidy(x[2]), tidy(x[3]));
}

std::string point_text(const Point3& p) {
    return fmt::format("({:.9f}, {:.9f}, {:.9f})", tidy(p[0]), tidy(p[1]), tidy(p[2]));
}

std::string pm(const DensityEstimate& d) {
    return fmt::format("{:.7f} +/- {:.1e}", d.value, d.est_error);
}

std::string format_or(const RunConfig& c, std::string_view fallback) {
    return c.format.empty() ? std::string(fallback) : c.format;
}

void require_format(const std::string& f, std::initializer_list<std::string_view> allowed) {
    for (auto a : allowed)
        if (f == a)
            return;
    std::string list;
    for (auto a : allowed)
        list += (list.empty() ? "" : ", ") + std::string(a);
    throw InvalidInput(fmt::format("--format {} is not available here (choose from {})", f, list));
}

std::string emit(const json& j) {
    return j.dump(2) + "\n";
}

CoxeterCell cell_of(const RunConfig& c) {
    return build_cell(c.symbol, c.placement_t, c.allow_nonstandard);
}

bool has_two_ideal(const CoxeterCell& cell) {
    return cell.vertex_classes[0] == PointClass::Ideal && cell.vertex_classes[2] == PointClass::Ideal;
}

ExportFormat scene_format(const RunConfig& c) {
    if (!c.format.empty())
        return parse_export_format(c.format);
    const auto dot = c.out.rfind('.');
    if (dot != std::string::npos) {
        const std::string ext = c.out.substr(dot + 1);
        if (ext == "obj" || ext == "ply" || ext == "json")
            return parse_export_format(ext);
    }
    return ExportFormat::Obj;
}

// Horoballs used for pictures and tilings: the optimal pair when both a0 and
// a2 are ideal and --mode two, else the largest single ball at --vertex.
std::vector<Horoball> packing_horoballs(const RunConfig& c, const CoxeterCell& cell, const VolumeResult& vol) {
    if (c.horoball_mode == "two") {
        const TwoHoroballConfig cfg =
            c.touch_t ? two_horoball_config(cell, *c.touch_t) : optimize_density(cell, vol).config;
        return {cfg.ball0, cfg.ball2};
    }
    return {max_one_horoball(cell, c.vertex).ball};
}

struct TilingStats {
    std::size_t cells = 0;
    std::size_t horoball_pairs = 0;
    double max_contact = -std::numeric_limits<double>::infinity();
    std::size_t inball_pairs = 0;
    double min_gap = std::numeric_limits<double>::infinity(); // d(c_i, c_j) - 2r
};

TilingStats tiling_stats(const std::vector<CellInstance>& cells) {
    TilingStats s;
    s.cells = cells.size();
    std::vector<Horoball> balls;
    for (const auto& inst : cells)
        for (const auto& b : inst.horoballs) {
            const bool dup = std::any_of(balls.begin(), balls.end(), [&](const Horoball& o) {
                return (o.b - b.b).euclidean_norm() <= 1e-7 * b.b.euclidean_norm();
            });
            if (!dup)
                balls.push_back(b);
        }
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            s.max_contact = std::max(s.max_contact, contact(balls[i], balls[j]));
            ++s.horoball_pairs;
        }
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            if (!cells[i].inball || !cells[j].inball)
                continue;
            const double d = distance(cells[i].inball->center, cells[j].inball->center);
            s.min_gap = std::min(s.min_gap, d - cells[i].inball->radius - cells[j].inball->radius);
            ++s.inball_pairs;
        }
    return s;
}

Scene build_scene(const RunConfig& c) {
    const CoxeterCell cell = cell_of(c);
    const VolumeResult vol = cell_volume(cell, c.tol);
    const InscribedBall ib = optimal_inball(cell);
    Packing packing;
    packing.horoballs = packing_horoballs(c, cell, vol);
    packing.inball = ib;

    Scene scene;
    const auto cells = expand(cell, {c.crowns, 3, c.crown_mode}, packing);
    std::vector<Horoball> drawn;
    for (const auto& inst : cells) {
        scene.meshes.push_back(mesh_instance(inst));
        scene.meshes.push_back(mesh_ball(*inst.inball, c.resolution));
        scene.meshes.back().part_label = "inball " + inst.word_string();
        for (const auto& b : inst.horoballs) {
            const bool dup = std::any_of(drawn.begin(), drawn.end(), [&](const Horoball& o) {
                return (o.b - b.b).euclidean_norm() <= 1e-7 * b.b.euclidean_norm();
            });
            if (dup)
                continue;
            drawn.push_back(b);
            scene.meshes.push_back(mesh_horoball(b, c.resolution));
            scene.meshes.back().part_label = fmt::format("horoball {}", drawn.size() - 1);
        }
    }
    if (c.model_sphere)
        scene.meshes.push_back(mesh_model_sphere(c.resolution));
    for (const auto& m : scene.meshes)
        validate(m);

    DensityEstimate hd;
    if (packing.horoballs.size() == 2) {
        TwoHoroballConfig two{0.0, packing.horoballs[0], packing.horoballs[1], {}};
        hd = density(cell, two, vol);
    } else {
        hd = density(cell, max_one_horoball(cell, c.vertex), vol);
    }
    const DensityEstimate id = inball_density(ib, vol);
    scene.metadata = {
        {"symbol", c.symbol.to_string()},
        {"tool_version", std::string(kToolVersion)},
        {"parameters",
         {{"placement_t", c.placement_t},
          {"tol", c.tol},
          {"crowns", c.crowns},
          {"crown_mode", std::string(to_string(c.crown_mode))},
          {"resolution", c.resolution},
          {"horoball_mode", c.horoball_mode}}},
        {"volume", {{"value", vol.value}, {"est_error", vol.est_error}}},
        {"densities",
         {{"inball", {{"value", id.value}, {"est_error", id.est_error}}},
          {"horoball", {{"value", hd.value}, {"est_error", hd.est_error}}}}},
        {"cells", cells.size()},
    };
    return scene;
}

} // namespace

std::string_view to_string(Command c) {
    switch (c) {
    case Command::Cell: return "cell";
    case Command::Inball: return "inball";
    case Command::Horoball: return "horoball";
    case Command::Optimize: return "optimize";
    case Command::Tiling: return "tiling";
    case Command::Export: return "export";
    case Command::Table: return "table";
    }
    return "?";
}

void validate(const RunConfig& c) {
    if (c.command != Command::Table)
        validate(c.symbol, c.allow_nonstandard);
    if (!std::isfinite(c.placement_t))
        throw InvalidInput("--placement-t must be finite");
    if (!(c.tol > 0.0 && c.tol < 1.0))
        throw InvalidInput(fmt::format("--tol must lie in (0,1), got {}", c.tol));
    if (c.crowns < 0 || c.crowns > 3)
        throw InvalidInput(fmt::format("--crowns must lie in [0,3], got {}", c.crowns));
    if (c.resolution < 8)
        throw InvalidInput(fmt::format("--resolution must be at least 8, got {}", c.resolution));
    if (c.horoball_mode != "one" && c.horoball_mode != "two")
        throw InvalidInput(fmt::format("--mode must be one or two, got '{}'", c.horoball_mode));
    if (c.vertex < 0 || c.vertex > 2)
        throw InvalidInput(fmt::format("--vertex must be 0, 1 or 2, got {}", c.vertex));
    if (c.touch_t && !(*c.touch_t > 0.0 && *c.touch_t < 1.0))
        throw InvalidInput(fmt::format("--touch-t must lie in (0,1), got {}", *c.touch_t));
}

std::string cmd_cell(const RunConfig& c) {
    const std::string f = format_or(c, "text");
    require_format(f, {"text", "json"});
    const CoxeterCell cell = cell_of(c);
    const std::array<std::string, 4> names{"a0", "a1", "a2", "a3"};

    if (f == "json") {
        json j;
        j["symbol"] = cell.symbol.to_string();
        j["placement_t"] = cell.placement_t;
        j["normals"] = json::array();
        for (int i = 0; i < 5; ++i)
            j["normals"].push_back(to_json(cell.normal(i)));
        j["vertices"] = json::array();
        for (int i = 0; i < 4; ++i)
            j["vertices"].push_back({{"name", names[i]},
                                     {"coords", to_json(cell.vertices[i])},
                                     {"class", std::string(to_string(cell.vertex_classes[i]))}});
        j["truncation"] = json::array();
        for (int i = 0; i < 3; ++i)
            j["truncation"].push_back({{"edge", fmt::format("a3a{}", i)},
                                       {"coords", to_json(cell.truncation[i])},
                                       {"class", std::string(to_string(cell.truncation_classes[i]))}});
        j["ideal_vertices"] = cell.ideal_vertex_indices();
        j["residuals"] = {{"gram", cell.gram_residual()},
                          {"duality", cell.duality_residual()},
                          {"u4_norm", cell.u4_norm_residual}};
        return emit(j);
    }

    std::string out = fmt::format("cell {}  placement_t = {}\n", cell.symbol.to_string(), cell.placement_t);
    for (int i = 0; i < 5; ++i)
        out += fmt::format("  u{} = {}\n", i, vec_text(cell.normal(i)));
    for (int i = 0; i < 4; ++i)
        out += fmt::format("  {} = {}  {}\n", names[i], vec_text(cell.vertices[i]), to_string(cell.vertex_classes[i]));
    for (int i = 0; i < 3; ++i)
        out += fmt::format("  h4 on a3a{} = {}  {}\n", i, vec_text(cell.truncation[i]),
                           to_string(cell.truncation_classes[i]));
    out += fmt::format("  gram residual {:.2e}, duality residual {:.2e}, |<u4,u4>-1| {:.2e}\n", cell.gram_residual(),
                       cell.duality_residual(), cell.u4_norm_residual);
    return out;
}

std::string cmd_inball(const RunConfig& c) {
    const std::string f = format_or(c, "text");
    require_format(f, {"text", "json"});
    const CoxeterCell cell = cell_of(c);
    const VolumeResult vol = cell_volume(cell, c.tol);
    const InscribedBall ib = optimal_inball(cell);
    const DensityEstimate d = inball_density(ib, vol);

    if (f == "json") {
        json j;
        j["symbol"] = cell.symbol.to_string();
        j["center"] = to_json(ib.center);
        j["center_klein"] = klein_coords(ib.center);
        j["radius"] = ib.radius;
        j["tangent_faces"] = ib.tangent_faces;
        j["bisector_choice"] = ib.bisector_choice;
        j["volume"] = {{"value", vol.value}, {"est_error", vol.est_error}};
        j["density"] = {{"value", d.value}, {"est_error", d.est_error}};
        j["residuals"] = {{"gram", cell.gram_residual()}, {"duality", cell.duality_residual()}};
        return emit(j);
    }
    std::string faces, pairs;
    for (int i : ib.tangent_faces)
        faces += fmt::format(" h{}", i);
    for (auto [a, b] : ib.bisector_choice)
        pairs += fmt::format(" ({},{})", a, b);
    return fmt::format("inball {}\n  center (Klein) {}\n  radius {:.9f}\n  tangent faces{}\n  bisectors{}\n"
                       "  cell volume {:.7f} +/- {:.1e}\n  density {}\n  gram residual {:.2e}\n",
                       cell.symbol.to_string(), point_text(klein_coords(ib.center)), ib.radius, faces, pairs,
                       vol.value, vol.est_error, pm(d), cell.gram_residual());
}

std::string cmd_horoball(const RunConfig& c) {
    const std::string f = format_or(c, "text");
    require_format(f, {"text", "json"});
    const CoxeterCell cell = cell_of(c);
    const VolumeResult vol = cell_volume(cell, c.tol);
    json j;
    std::string out;
    j["symbol"] = cell.symbol.to_string();
    j["mode"] = c.horoball_mode;

    if (c.horoball_mode == "one") {
        const OneHoroballConfig cfg = max_one_horoball(cell, c.vertex);
        const DensityEstimate d = density(cell, cfg, vol);
        j["vertex"] = cfg.vertex_index;
        j["touching_face"] = cfg.touching_face;
        j["b"] = to_json(cfg.ball.b);
        j["s"] = cfg.ball.s_param();
        j["touch_point_klein"] = klein_coords(cfg.touch_point);
        j["density"] = {{"value", d.value}, {"est_error", d.est_error}};
        out = fmt::format("horoball {} at a{}\n  touches h{} at {}\n  s = {:.9f}\n  density {}\n",
                          cell.symbol.to_string(), cfg.vertex_index, cfg.touching_face,
                          point_text(klein_coords(cfg.touch_point)), cfg.ball.s_param(), pm(d));
    } else {
        if (!c.touch_t)
            throw InvalidInput("--mode two needs --touch-t (see `optimize` for the feasible interval)");
        const TwoHoroballConfig cfg = two_horoball_config(cell, *c.touch_t);
        const bool ok = is_valid(cell, cfg);
        std::array<double, 5> cl0{}, cl2{};
        for (int i = 0; i < 5; ++i) {
            cl0[i] = clearance(cfg.ball0, cell.normals[i]);
            cl2[i] = clearance(cfg.ball2, cell.normals[i]);
        }
        j["touch_t"] = cfg.touch_t;
        j["b0"] = to_json(cfg.ball0.b);
        j["b2"] = to_json(cfg.ball2.b);
        j["contact"] = contact(cfg.ball0, cfg.ball2);
        j["valid"] = ok;
        out = fmt::format("horoballs {} at a0 and a2, touch_t = {}\n  contact <b0,b2> = {:.12f}\n  valid {}\n",
                          cell.symbol.to_string(), cfg.touch_t, contact(cfg.ball0, cfg.ball2), ok ? "yes" : "no");
        if (ok) {
            const DensityEstimate d = density(cell, cfg, vol);
            j["density"] = {{"value", d.value}, {"est_error", d.est_error}};
            out += fmt::format("  density {}\n", pm(d));
        } else {
            j["density"] = nullptr;
            out += "  a ball crosses a face; no density\n";
        }
    }
    return f == "json" ? emit(j) : out;
}

std::string cmd_optimize(const RunConfig& c) {
    const std::string f = format_or(c, "text");
    require_format(f, {"text", "json", "csv"});
    const CoxeterCell cell = cell_of(c);
    if (!has_two_ideal(cell))
        throw InvalidInput(fmt::format("{} has a single ideal vertex; nothing to optimize", cell.symbol.to_string()));
    const VolumeResult vol = cell_volume(cell, c.tol);
    const OptimizationResult r = optimize_density(cell, vol);
    const std::string csv = density_csv(r.curve);
    if (!c.out.empty())
        write_file(c.out, csv);
    if (f == "csv")
        return csv;
    if (f == "json") {
        json j;
        j["symbol"] = cell.symbol.to_string();
        j["feasible"] = {r.curve.feasible.lo, r.curve.feasible.hi};
        j["touch_t"] = r.touch_t;
        j["density"] = {{"value", r.density.value}, {"est_error", r.density.est_error}};
        j["samples"] = r.curve.samples.size();
        return emit(j);
    }
    return fmt::format("optimize {}\n  feasible t in [{:.7f}, {:.7f}]\n  t* = {:.7f}\n  density {}\n",
                       cell.symbol.to_string(), r.curve.feasible.lo, r.curve.feasible.hi, r.touch_t, pm(r.density));
}

std::string cmd_tiling(const RunConfig& c) {
    const std::string f = format_or(c, "text");
    require_format(f, {"text", "json"});
    const CoxeterCell cell = cell_of(c);
    const VolumeResult vol = cell_volume(cell, c.tol);
    Packing packing;
    packing.inball = optimal_inball(cell);
    RunConfig pc = c;
    if (pc.horoball_mode == "one" && has_two_ideal(cell) && !c.touch_t)
        pc.horoball_mode = "two";
    packing.horoballs = packing_horoballs(pc, cell, vol);
    const auto cells = expand(cell, {c.crowns, 3, c.crown_mode}, packing);
    const TilingStats s = tiling_stats(cells);

    if (!c.out.empty()) {
        RunConfig sc = pc;
        sc.format.clear();
        write_file(c.out, export_scene(build_scene(sc), scene_format(c)));
    }
    if (f == "json") {
        json j;
        j["symbol"] = cell.symbol.to_string();
        j["crowns"] = c.crowns;
        j["crown_mode"] = std::string(to_string(c.crown_mode));
        j["cells"] = s.cells;
        j["words"] = json::array();
        for (const auto& inst : cells)
            j["words"].push_back(inst.word_string());
        j["horoball_pairs"] = s.horoball_pairs;
        j["max_horoball_contact"] = s.horoball_pairs ? json(s.max_contact) : json(nullptr);
        j["inball_pairs"] = s.inball_pairs;
        j["min_inball_gap"] = s.inball_pairs ? json(s.min_gap) : json(nullptr);
        return emit(j);
    }
    std::string out = fmt::format("tiling {}  crowns {} ({} mode)\n  cells {}\n", cell.symbol.to_string(), c.crowns,
                                  to_string(c.crown_mode), s.cells);
    if (s.horoball_pairs)
        out += fmt::format("  horoball pairs {}, max <bi,bj> = {:.12f}\n", s.horoball_pairs, s.max_contact);
    if (s.inball_pairs)
        out += fmt::format("  inball pairs {}, min d(ci,cj) - 2r = {:.9f}\n", s.inball_pairs, tidy(s.min_gap));
    return out;
}

std::string cmd_export(const RunConfig& c) {
    const ExportFormat f = scene_format(c);
    const std::string bytes = export_scene(build_scene(c), f);
    if (c.out.empty())
        return bytes;
    write_file(c.out, bytes);
    return fmt::format("wrote {} ({} bytes, {})\n", c.out, bytes.size(), to_string(f));
}

std::string cmd_table(const RunConfig& c) {
    const std::string f = format_or(c, "text");
    require_format(f, {"text", "csv"});
    auto num = [](double v) { return fmt::format("{:.7f}", v); };
    auto err = [](double v) { return fmt::format("{:.1e}", v); };

    std::vector<std::array<std::string, 11>> rows;
    for (const auto& s : admissible_symbols()) {
        const CoxeterCell cell = build_cell(s, c.placement_t);
        const VolumeResult vol = cell_volume(cell, c.tol);
        const DensityEstimate id = inball_density(optimal_inball(cell), vol);
        const DensityEstimate od = density(cell, max_one_horoball(cell, 2), vol);
        std::array<std::string, 11> row{s.to_string(), num(vol.value), num(id.value), err(id.est_error),
                                        num(od.value), err(od.est_error), "n/a", "n/a", "n/a", "n/a", "n/a"};
        if (has_two_ideal(cell)) {
            const OptimizationResult r = optimize_density(cell, vol);
            row[6] = num(r.density.value);
            row[7] = err(r.density.est_error);
            row[8] = num(r.curve.feasible.lo);
            row[9] = num(r.curve.feasible.hi);
            row[10] = num(r.touch_t);
        }
        rows.push_back(row);
    }
    const std::array<std::string, 11> header{"symbol",    "volume",    "inball",  "inball_err",
                                             "one_horo",  "one_err",   "two_horo", "two_err",
                                             "t_lo",      "t_hi",      "t_opt"};
    std::string out;
    if (f == "csv") {
        for (std::size_t k = 0; k < header.size(); ++k)
            out += (k ? "," : "") + header[k];
        out += "\n";
        for (const auto& r : rows) {
            for (std::size_t k = 0; k < header.size(); ++k)
                out += (k ? "," : "") + (k == 0 ? "\"" + r[k] + "\"" : r[k]);
            out += "\n";
        }
    } else {
        for (std::size_t k = 0; k < header.size(); ++k)
            out += fmt::format("{:<{}}", header[k], k == 0 ? 16 : 11);
        out += "\n";
        for (const auto& r : rows) {
            for (std::size_t k = 0; k < header.size(); ++k)
                out += fmt::format("{:<{}}", r[k], k == 0 ? 16 : 11);
            out += "\n";
        }
    }
    if (!c.out.empty())
        write_file(c.out, out);
    return out;
}

std::string run(const RunConfig& c) {
    validate(c);
    switch (c.command) {
    case Command::Cell: return cmd_cell(c);
    case Command::Inball: return cmd_inball(c);
    case Command::Horoball: return cmd_horoball(c);
    case Command::Optimize: return cmd_optimize(c);
    case Command::Tiling: return cmd_tiling(c);
    case Command::Export: return cmd_export(c);
    case Command::Table: return cmd_table(c);
    }
    throw InvalidInput("unknown command");
}

} // namespace orthopack
