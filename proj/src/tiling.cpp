#include "orthopack/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "orthopack/error.hpp"

namespace orthopack {

std::string_view to_string(CrownMode m) {
    return m == CrownMode::Face ? "face" : "vertex";
}

CrownMode parse_crown_mode(std::string_view text) {
    if (text == "face")
        return CrownMode::Face;
    if (text == "vertex")
        return CrownMode::Vertex;
    throw InvalidInput(fmt::format("unknown crown mode '{}' (expected face or vertex)", text));
}

std::string CellInstance::word_string() const {
    if (word.empty())
        return "e";
    std::string out;
    for (int g : word)
        out += fmt::format("T{}", g);
    return out;
}

Transform generator(const CoxeterCell& cell, int i) {
    if (i < 0 || i > 4)
        throw InvalidInput(fmt::format("generator index {} out of range", i));
    Eigen::Vector4d u = cell.normal(i).coeffs();
    Eigen::Vector4d ju = u;
    ju[0] = -ju[0];
    return Transform(Eigen::Matrix4d(Eigen::Matrix4d::Identity() - 2.0 * u * ju.transpose()));
}

namespace {

CellInstance transport(const CoxeterCell& cell, std::vector<int> word, const Transform& m, const Packing& packing) {
    CellInstance inst;
    inst.word = std::move(word);
    inst.transform = m;
    for (const auto& v : cell.polyhedron_vertices()) {
        LorentzVector x = m(v.point);
        if (x[0] < 0.0)
            x = -x;
        inst.vertices.push_back(x);
    }
    for (int i = 0; i < 5; ++i)
        inst.normals[i] = m(cell.normal(i));
    for (const auto& b : packing.horoballs)
        inst.horoballs.push_back(Horoball::from_null_vector(m(b.b)));
    if (packing.inball) {
        InscribedBall ball = *packing.inball;
        ball.center = normalize_proper(m(ball.center));
        inst.inball = ball;
    }
    return inst;
}

} // namespace

CellInstance make_instance(const CoxeterCell& cell, const std::vector<int>& word, const Packing& packing) {
    Transform m;
    for (int g : word)
        m = m * generator(cell, g);
    return transport(cell, word, m, packing);
}

CanonicalKey canonical_key(const CellInstance& instance, double step) {
    CanonicalKey key;
    for (const auto& v : instance.vertices) {
        const Point3 k = klein_coords(v);
        key.push_back({std::llround(k[0] / step), std::llround(k[1] / step), std::llround(k[2] / step)});
    }
    std::sort(key.begin(), key.end());
    return key;
}

std::vector<CellInstance> expand(const CoxeterCell& cell, const CrownSpec& crown, const Packing& packing) {
    if (crown.depth < 0 || crown.depth > crown.max_depth)
        throw InvalidInput(fmt::format("crown depth {} outside [0, {}]", crown.depth, crown.max_depth));

    std::vector<int> gens;
    if (crown.mode == CrownMode::Face) {
        gens = {0, 1, 2, 3, 4};
    } else {
        if (cell.vertex_classes[2] != PointClass::Ideal)
            throw InvalidInput("vertex crowns need an ideal a2");
        gens = cell.incident_faces(cell.vertices[2]);
    }
    std::array<Transform, 5> t;
    for (int i = 0; i < 5; ++i)
        t[i] = generator(cell, i);

    std::vector<CellInstance> out;
    std::set<CanonicalKey> seen;
    std::deque<std::pair<std::size_t, int>> queue; // index into out, depth

    out.push_back(transport(cell, {}, Transform(), packing));
    seen.insert(canonical_key(out.back()));
    queue.emplace_back(0, 0);
    while (!queue.empty()) {
        const auto [idx, d] = queue.front();
        queue.pop_front();
        if (d == crown.depth)
            continue;
        for (int g : gens) {
            std::vector<int> word = out[idx].word;
            word.push_back(g);
            CellInstance next = transport(cell, std::move(word), out[idx].transform * t[g], packing);
            if (!seen.insert(canonical_key(next)).second)
                continue;
            if (out.size() >= crown.budget)
                throw InvalidInput(fmt::format("tiling expansion exceeds the budget of {} cells", crown.budget));
            out.push_back(std::move(next));
            queue.emplace_back(out.size() - 1, d + 1);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CellInstance& a, const CellInstance& b) {
        if (a.word.size() != b.word.size())
            return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    return out;
}

bool contains(const CellInstance& instance, const LorentzVector& x, double tol) {
    for (const auto& u : instance.normals)
        if (bilinear(x, u) < -tol * std::max(1.0, x.euclidean_norm()))
            return false;
    return true;
}

} // namespace orthopack
