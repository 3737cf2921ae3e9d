#include "orthopack/coxeter.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>
#include <fmt/format.h>

#include "orthopack/error.hpp"

namespace orthopack {

namespace {

constexpr double kPi = std::numbers::pi;

bool parse_infinity(std::string_view tok) {
    return tok == "inf" || tok == "oo" || tok == "\xE2\x88\x9E" || tok == "infinity" || tok == "Inf";
}

int parse_int(std::string_view tok, std::string_view text) {
    if (tok.empty() || tok.size() > 3)
        throw InvalidInput(fmt::format("bad Schlafli parameter '{}' in '{}'", tok, text));
    int v = 0;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidInput(fmt::format("bad Schlafli parameter '{}' in '{}'", tok, text));
        v = v * 10 + (c - '0');
    }
    return v;
}

} // namespace

SchlafliSymbol SchlafliSymbol::parse(std::string_view text) {
    std::string cleaned;
    for (char c : text) {
        if (c == '{' || c == '}' || c == ' ' || c == '(' || c == ')')
            continue;
        cleaned.push_back(c == ';' ? ',' : c);
    }
    std::vector<std::string> parts;
    std::string cur;
    for (char c : cleaned) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);

    if (parts.size() == 2)
        return {parse_int(parts[0], text), parse_int(parts[1], text)};
    if (parts.size() != 4 || !parse_infinity(parts[0]) || !parse_infinity(parts[3]))
        throw InvalidInput(fmt::format("expected a symbol of the form inf,q,r,inf; got '{}'", text));
    return {parse_int(parts[1], text), parse_int(parts[2], text)};
}

std::string SchlafliSymbol::to_string() const {
    return fmt::format("{{inf,{},{},inf}}", q, r);
}

std::string SchlafliSymbol::key() const {
    return fmt::format("{},{}", q, r);
}

const std::array<SchlafliSymbol, 8>& admissible_symbols() {
    static const std::array<SchlafliSymbol, 8> list{{{3, 3}, {3, 4}, {3, 5}, {3, 6}, {4, 3}, {4, 4}, {5, 3}, {6, 3}}};
    return list;
}

bool satisfies_inequalities(const SchlafliSymbol& s) {
    if (s.q < 3 || s.r < 3)
        return false;
    // 1/q + 1/r >= 1/2  <=>  2(q + r) >= q r
    return 2 * (s.q + s.r) >= s.q * s.r;
}

bool is_admissible(const SchlafliSymbol& s) {
    for (const auto& a : admissible_symbols())
        if (a == s)
            return true;
    return false;
}

void validate(const SchlafliSymbol& s, bool allow_nonstandard) {
    if (!satisfies_inequalities(s))
        throw InvalidInput(fmt::format(
            "symbol {} is not admissible: need q, r >= 3 and 1/q + 1/r >= 1/2 (admissible: "
            "{{inf,3,3,inf}} {{inf,3,4,inf}} {{inf,3,5,inf}} {{inf,3,6,inf}} {{inf,4,3,inf}} "
            "{{inf,4,4,inf}} {{inf,5,3,inf}} {{inf,6,3,inf}})",
            s.to_string()));
    if (!is_admissible(s) && !allow_nonstandard)
        throw InvalidInput(fmt::format("symbol {} is outside the eight supported symbols; pass "
                                       "--allow-nonstandard-symbol to try it anyway",
                                       s.to_string()));
}

double c4(std::optional<int> p, int q, int r) {
    const double cq = std::cos(kPi / q);
    const double cr = std::cos(kPi / r);
    if (!p)
        return -1.0;
    const double cp = std::cos(kPi / *p);
    const double den = 1.0 - cp * cp - cq * cq;
    if (std::abs(den) < 1e-15)
        throw InvalidInput(fmt::format("c4 denominator vanishes for ({}, {}, {})", *p, q, r));
    const double num = 1.0 + cp * cp * cr * cr - cp * cp - cq * cq - cr * cr;
    const double ratio = num / den;
    if (ratio < 0.0)
        throw InvalidInput(fmt::format("c4 is not real for ({}, {}, {})", *p, q, r));
    return -std::sqrt(ratio);
}

CoxeterMatrix build_matrix(const SchlafliSymbol& s, bool allow_nonstandard) {
    validate(s, allow_nonstandard);
    CoxeterMatrix c = CoxeterMatrix::Identity();
    const double cq = std::cos(kPi / s.q);
    const double cr = std::cos(kPi / s.r);
    c(0, 1) = c(1, 0) = -1.0;
    c(1, 2) = c(2, 1) = -cq;
    c(2, 3) = c(3, 2) = -cr;
    c(3, 4) = c(4, 3) = c4(std::nullopt, s.q, s.r);
    return c;
}

PrincipalSubmatrix principal_submatrix(const CoxeterMatrix& c) {
    return c.topLeftCorner<4, 4>();
}

std::array<Hyperplane, 5> solve_normals(const PrincipalSubmatrix& sub, double placement_t, double* u4_norm_residual) {
    const double det = sub.determinant();
    if (!(det < 0.0))
        throw InvalidInput(fmt::format("principal submatrix has determinant {} >= 0; not a signature (1,3) Gram matrix", det));
    if (std::abs(sub(0, 1) + 1.0) > 1e-14 || sub(0, 2) != 0.0 || sub(0, 3) != 0.0 || sub(1, 3) != 0.0)
        throw InvalidInput("solve_normals expects the parallel-face pattern (<u0,u1> = -1, u0 and u1 orthogonal to u3)");

    const double ch = std::cosh(placement_t);
    const double sh = std::sinh(placement_t);
    const LorentzVector u0(sh, 0.0, ch, 0.0);
    const LorentzVector u3(0.0, 0.0, 0.0, 1.0);

    // The orthogonal complement of u0, u3 is spanned by w = (cosh t, 0, sinh t, 0)
    // and e1; <u1,u0> = -1 with <u1,u1> = 1 forces u1 + u0 to be null there.
    // The scale of that null vector is the residual boost freedom; -1 keeps the
    // vertices in the x0 > 0 nappe.
    const LorentzVector null_dir = LorentzVector(ch, 1.0, sh, 0.0) * -1.0;
    const LorentzVector u1 = -u0 + null_dir;

    // u2: three linear conditions plus <u2,u2> = 1. The kernel of the linear
    // part is the null direction itself, so the norm condition is linear too.
    const LorentzVector aux(ch, -1.0, sh, 0.0); // <aux, null_dir> != 0
    Eigen::Matrix4d m;
    Eigen::Vector4d rhs;
    const std::array<const LorentzVector*, 4> rows{&u0, &u1, &u3, &aux};
    for (int i = 0; i < 4; ++i) {
        const auto& r = *rows[i];
        m.row(i) << -r[0], r[1], r[2], r[3];
    }
    rhs << sub(2, 0), sub(2, 1), sub(2, 3), 0.0;
    const LorentzVector particular(Eigen::Vector4d(m.fullPivLu().solve(rhs)));
    const double lin = 2.0 * bilinear(particular, null_dir);
    if (std::abs(lin) < 1e-14)
        throw InvalidInput("no real solution for u2; the matrix is not admissible");
    const LorentzVector u2 = particular + null_dir * ((1.0 - quadratic(particular)) / lin);

    // u4 = E A g, g = (<u_i,u4>)_{i<4} = (0,0,0,c4).
    Eigen::Matrix4d e;
    e.col(0) = u0.coeffs();
    e.col(1) = u1.coeffs();
    e.col(2) = u2.coeffs();
    e.col(3) = u3.coeffs();
    const Eigen::Matrix4d a = sub.inverse();
    const Eigen::Vector4d g(0.0, 0.0, 0.0, -1.0);
    const LorentzVector u4(Eigen::Vector4d(e * (a * g)));
    const double resid = std::abs(quadratic(u4) - 1.0);
    if (u4_norm_residual)
        *u4_norm_residual = resid;
    if (resid > 1e-9)
        throw NumericalFailure(fmt::format("emergent <u4,u4> deviates from 1 by {}", resid));

    return {Hyperplane::from_normal(u0), Hyperplane::from_normal(u1), Hyperplane::from_normal(u2),
            Hyperplane::from_normal(u3), Hyperplane::from_normal(u4)};
}

std::array<LorentzVector, 4> vertices(const std::array<Hyperplane, 5>& normals, const PrincipalSubmatrix& sub) {
    Eigen::Matrix4d e;
    for (int i = 0; i < 4; ++i)
        e.col(i) = normals[i].normal().coeffs();
    const Eigen::Matrix4d ea = e * sub.inverse();
    return {LorentzVector(Eigen::Vector4d(ea.col(0))), LorentzVector(Eigen::Vector4d(ea.col(1))),
            LorentzVector(Eigen::Vector4d(ea.col(2))), LorentzVector(Eigen::Vector4d(ea.col(3)))};
}

CoxeterCell truncate(const SchlafliSymbol& symbol, const CoxeterMatrix& matrix, const std::array<Hyperplane, 5>& normals,
                     const std::array<LorentzVector, 4>& verts, double placement_t, const Tolerance& tol) {
    CoxeterCell cell{symbol, matrix, normals, verts, {}, {}, {}, placement_t, 0.0};
    for (int j = 0; j < 4; ++j)
        cell.vertex_classes[j] = classify(verts[j], tol);
    if (cell.vertex_classes[3] != PointClass::UltraIdeal)
        throw InvalidInput("vertex a3 is not ultra-ideal; nothing to truncate");

    // Inward normal of the polar plane of a3 is proportional to -a3.
    const Hyperplane polar_plane = polar(verts[3], tol).flipped();
    const LorentzVector& u4 = normals[4].normal();
    const double align = bilinear(polar_plane.normal(), u4);
    if (std::abs(align - 1.0) > 1e-9)
        throw NumericalFailure(fmt::format("polar of a3 disagrees with the Gram-solved u4 (<.,.> = {})", align));

    for (int j = 0; j < 3; ++j) {
        // Point of the line a3 + lambda a_j on h4, written homogeneously so that
        // an endpoint already on h4 comes back as itself.
        LorentzVector x = verts[3] * bilinear(verts[j], u4) - verts[j] * bilinear(verts[3], u4);
        x = orient_future(x);
        const PointClass c = classify(x, tol);
        if (c == PointClass::UltraIdeal)
            throw NumericalFailure(fmt::format("edge a3 a{} misses h4 inside the model", j));
        cell.truncation[j] = x;
        cell.truncation_classes[j] = c;
    }
    return cell;
}

CoxeterCell build_cell(const SchlafliSymbol& s, double placement_t, bool allow_nonstandard) {
    const CoxeterMatrix c = build_matrix(s, allow_nonstandard);
    const PrincipalSubmatrix sub = principal_submatrix(c);
    double resid = 0.0;
    const auto normals = solve_normals(sub, placement_t, &resid);
    const auto verts = vertices(normals, sub);
    CoxeterCell cell = truncate(s, c, normals, verts, placement_t);
    cell.u4_norm_residual = resid;
    return cell;
}

std::vector<CellVertex> CoxeterCell::polyhedron_vertices() const {
    std::vector<CellVertex> out;
    for (int j = 0; j < 3; ++j)
        out.push_back({orient_future(vertices[j]), vertex_classes[j], fmt::format("a{}", j)});
    for (int j = 0; j < 3; ++j) {
        const LorentzVector x = truncation[j];
        bool duplicate = false;
        for (const auto& v : out) {
            const auto kx = klein_coords(x);
            const auto kv = klein_coords(v.point);
            if (std::abs(kx[0] - kv[0]) + std::abs(kx[1] - kv[1]) + std::abs(kx[2] - kv[2]) < 1e-9)
                duplicate = true;
        }
        if (!duplicate)
            out.push_back({x, truncation_classes[j], fmt::format("t{}", j)});
    }
    return out;
}

std::vector<int> CoxeterCell::incident_faces(const LorentzVector& x) const {
    std::vector<int> faces;
    const double scale = x.euclidean_norm();
    for (int i = 0; i < 5; ++i)
        if (std::abs(bilinear(x, normal(i))) <= 1e-9 * std::max(1.0, scale))
            faces.push_back(i);
    return faces;
}

std::vector<int> CoxeterCell::ideal_vertex_indices() const {
    std::vector<int> out;
    for (int j = 0; j < 4; ++j)
        if (vertex_classes[j] == PointClass::Ideal)
            out.push_back(j);
    return out;
}

double CoxeterCell::gram_residual() const {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            worst = std::max(worst, std::abs(bilinear(normal(i), normal(j)) - matrix(i, j)));
    return worst;
}

double CoxeterCell::duality_residual() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(bilinear(normal(i), vertices[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

} // namespace orthopack
