#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthopack/coxeter.hpp"
#include "orthopack/horoball.hpp"
#include "orthopack/inball.hpp"
#include "orthopack/lorentz.hpp"

namespace orthopack {

enum class CrownMode { Face, Vertex };

std::string_view to_string(CrownMode m);
CrownMode parse_crown_mode(std::string_view text);

struct CrownSpec {
    int depth = 1;
    int max_depth = 3;
    CrownMode mode = CrownMode::Face;
    std::size_t budget = 20000;
};

/// Balls carried along with every cell image.
struct Packing {
    std::vector<Horoball> horoballs;
    std::optional<InscribedBall> inball;
};

using CanonicalKey = std::vector<std::array<std::int64_t, 3>>;

struct CellInstance {
    std::vector<int> word;
    Transform transform;
    std::vector<LorentzVector> vertices;  // polyhedron vertices, x0 > 0
    std::array<LorentzVector, 5> normals; // images of u0..u4
    std::vector<Horoball> horoballs;
    std::optional<InscribedBall> inball;

    std::string word_string() const; // "e" for the identity, else "T0T2..."
};

/// x -> x - 2<x,u_i>u_i as a matrix.
Transform generator(const CoxeterCell& cell, int i);

CellInstance make_instance(const CoxeterCell& cell, const std::vector<int>& word, const Packing& packing = {});

/// Sorted Klein coordinates of the vertices, rounded to multiples of `step`.
CanonicalKey canonical_key(const CellInstance& instance, double step = 1e-7);

/// Breadth-first images of the cell out to the given crown depth. Face mode
/// reflects in all five faces; vertex mode only in the faces through a2, so
/// every image shares that ideal vertex. Sorted by word length, then word.
std::vector<CellInstance> expand(const CoxeterCell& cell, const CrownSpec& crown, const Packing& packing = {});

/// <x, T u_i> >= -tol for all five transported normals.
bool contains(const CellInstance& instance, const LorentzVector& x, double tol = 1e-8);

} // namespace orthopack
