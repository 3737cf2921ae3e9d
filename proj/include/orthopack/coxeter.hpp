#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "orthopack/lorentz.hpp"

namespace orthopack {

/// {inf, q, r, inf}: the two outer parameters are fixed at infinity.
struct SchlafliSymbol {
    int q = 3;
    int r = 3;

    /// Accepts "inf,q,r,inf", "{∞,q,r,∞}", "{inf;q;r;inf}" and similar spellings.
    static SchlafliSymbol parse(std::string_view text);

    std::string to_string() const;
    /// Short "q,r" form used in tables and file names.
    std::string key() const;

    friend bool operator==(const SchlafliSymbol&, const SchlafliSymbol&) = default;
    friend auto operator<=>(const SchlafliSymbol&, const SchlafliSymbol&) = default;
};

/// The eight symbols for which a simply truncated orthoscheme with parallel
/// faces exists and which the packing results cover.
const std::array<SchlafliSymbol, 8>& admissible_symbols();

bool satisfies_inequalities(const SchlafliSymbol& s);
bool is_admissible(const SchlafliSymbol& s);
/// Throws InvalidInput with an actionable message.
void validate(const SchlafliSymbol& s, bool allow_nonstandard = false);

using CoxeterMatrix = Eigen::Matrix<double, 5, 5>;
using PrincipalSubmatrix = Eigen::Matrix4d;

/// Fifth Gram coefficient from the Napier-cycle condition; `p` empty means
/// p = infinity, in which case the value is exactly -1.
double c4(std::optional<int> p, int q, int r);

CoxeterMatrix build_matrix(const SchlafliSymbol& s, bool allow_nonstandard = false);
PrincipalSubmatrix principal_submatrix(const CoxeterMatrix& c);

/// Face normals u0..u4 with Gram matrix C. u0 = (sinh t, 0, cosh t, 0),
/// u3 = (0,0,0,1); u4 is taken from the null space of C, so <u4,u4> = 1 is a
/// consequence rather than a constraint. `u4_norm_residual` receives
/// |<u4,u4> - 1| before the final normalisation.
std::array<Hyperplane, 5> solve_normals(const PrincipalSubmatrix& sub, double placement_t,
                                        double* u4_norm_residual = nullptr);

/// Columns of E A with E = [u0 u1 u2 u3], A = sub^-1, so <u_i, a_j> = delta_ij.
std::array<LorentzVector, 4> vertices(const std::array<Hyperplane, 5>& normals, const PrincipalSubmatrix& sub);

struct CellVertex {
    LorentzVector point;
    PointClass cls;
    std::string name;
};

struct CoxeterCell {
    SchlafliSymbol symbol;
    CoxeterMatrix matrix;
    std::array<Hyperplane, 5> normals;
    std::array<LorentzVector, 4> vertices;       // a0..a3, raw E A columns
    std::array<PointClass, 4> vertex_classes;
    std::array<LorentzVector, 3> truncation;      // h4 on the edges a3 a_j, j = 0,1,2
    std::array<PointClass, 3> truncation_classes;
    double placement_t = 0.0;
    double u4_norm_residual = 0.0;

    const LorentzVector& normal(int i) const { return normals[i].normal(); }

    /// Vertices of the truncated polyhedron: a0, a1, a2 plus the distinct
    /// truncation points, each oriented with x0 > 0.
    std::vector<CellVertex> polyhedron_vertices() const;

    /// Indices of faces through `x` (|<x,u_i>| small relative to |x|).
    std::vector<int> incident_faces(const LorentzVector& x) const;

    /// Indices into `vertices` of the ideal ones.
    std::vector<int> ideal_vertex_indices() const;

    /// max |<u_i,u_j> - C_ij| over all five normals.
    double gram_residual() const;
    /// max |<u_i,a_j> - delta_ij| for i, j in 0..3.
    double duality_residual() const;
};

CoxeterCell truncate(const SchlafliSymbol& symbol, const CoxeterMatrix& matrix,
                     const std::array<Hyperplane, 5>& normals, const std::array<LorentzVector, 4>& verts,
                     double placement_t, const Tolerance& tol = {});

/// Full pipeline: matrix, normals, vertices, truncation.
CoxeterCell build_cell(const SchlafliSymbol& s, double placement_t = 0.0, bool allow_nonstandard = false);

} // namespace orthopack
