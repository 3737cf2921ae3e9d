#include "orthopack/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthopack/error.hpp"

namespace orthopack {

namespace {

const Eigen::Matrix4d& form_matrix() {
    static const Eigen::Matrix4d j = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    return j;
}

std::string describe(const LorentzVector& x) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ')';
    return os.str();
}

} // namespace

std::string_view to_string(PointClass c) {
    switch (c) {
    case PointClass::Proper: return "proper";
    case PointClass::Ideal: return "ideal";
    case PointClass::UltraIdeal: return "ultra-ideal";
    }
    return "unknown";
}

Hyperplane Hyperplane::from_normal(const LorentzVector& normal) {
    const double q = quadratic(normal);
    if (!(q > 0.0))
        throw InvalidInput("hyperplane normal is not spacelike: " + describe(normal));
    return Hyperplane(normal * (1.0 / std::sqrt(q)));
}

Transform Transform::inverse() const {
    const auto& j = form_matrix();
    return Transform(Eigen::Matrix4d(j * m_.transpose() * j));
}

double Transform::form_defect() const {
    const auto& j = form_matrix();
    return (m_.transpose() * j * m_ - j).cwiseAbs().maxCoeff();
}

double bilinear(const LorentzVector& x, const LorentzVector& y) {
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

PointClass classify(const LorentzVector& x, const Tolerance& tol) {
    if (x.is_zero())
        throw InvalidInput("cannot classify the zero vector");
    const double q = quadratic(x);
    const double band = tol.eps_class * std::max(1.0, x.coeffs().squaredNorm());
    if (std::abs(q) <= band)
        return PointClass::Ideal;
    return q < 0.0 ? PointClass::Proper : PointClass::UltraIdeal;
}

LorentzVector normalize_proper(const LorentzVector& x) {
    const double q = quadratic(x);
    if (!(q < 0.0))
        throw InvalidInput("point is not proper: " + describe(x));
    const double s = (x[0] > 0.0 ? 1.0 : -1.0) / std::sqrt(-q);
    return x * s;
}

LorentzVector orient_future(const LorentzVector& x) {
    return x[0] < 0.0 ? -x : x;
}

double distance(const LorentzVector& x, const LorentzVector& y) {
    const double qx = quadratic(x);
    const double qy = quadratic(y);
    if (!(qx < 0.0) || !(qy < 0.0))
        throw InvalidInput("distance needs two proper points");
    const double c = std::abs(bilinear(x, y)) / std::sqrt(qx * qy);
    return std::acosh(std::max(1.0, c));
}

Hyperplane polar(const LorentzVector& x, const Tolerance& tol) {
    if (classify(x, tol) != PointClass::UltraIdeal)
        throw InvalidInput("polar plane meets the model only for ultra-ideal points: " + describe(x));
    return Hyperplane::from_normal(x);
}

LorentzVector reflect(const Hyperplane& u, const LorentzVector& x) {
    const auto& n = u.normal();
    return x - n * (2.0 * bilinear(x, n));
}

LorentzVector project_to_plane(const LorentzVector& a, const Hyperplane& u) {
    const auto& n = u.normal();
    LorentzVector p = a - n * bilinear(a, n);
    if (p.is_zero() || !(quadratic(p) < 0.0))
        throw NumericalFailure("projection onto plane is not a proper point: " + describe(p));
    return p;
}

double plane_distance(const LorentzVector& x, const Hyperplane& u) {
    const LorentzVector xn = normalize_proper(x);
    return std::asinh(std::abs(bilinear(xn, u.normal())));
}

Point3 klein_coords(const LorentzVector& x) {
    if (x[0] == 0.0)
        throw InvalidInput("point with x0 = 0 has no Klein-model image: " + describe(x));
    return {x[1] / x[0], x[2] / x[0], x[3] / x[0]};
}

LorentzVector from_klein(const Point3& p) {
    return {1.0, p[0], p[1], p[2]};
}

Transform rotation_to_pole(const LorentzVector& ideal, double* phi_out, double* theta_out) {
    const Point3 k = klein_coords(orient_future(ideal));
    const double rho = std::hypot(k[0], k[1]);
    const double phi = std::atan2(k[0], k[1]);
    const double theta = std::atan2(rho, k[2]);

    Eigen::Matrix4d r12 = Eigen::Matrix4d::Identity();
    r12(1, 1) = std::cos(phi);
    r12(1, 2) = -std::sin(phi);
    r12(2, 1) = std::sin(phi);
    r12(2, 2) = std::cos(phi);
    Eigen::Matrix4d r23 = Eigen::Matrix4d::Identity();
    r23(2, 2) = std::cos(theta);
    r23(2, 3) = -std::sin(theta);
    r23(3, 2) = std::sin(theta);
    r23(3, 3) = std::cos(theta);

    if (phi_out) *phi_out = phi;
    if (theta_out) *theta_out = theta;
    return Transform(Eigen::Matrix4d(r23 * r12));
}

Point3 to_half_space(const LorentzVector& x, const LorentzVector& ideal_center) {
    const Transform t = rotation_to_pole(ideal_center);
    const LorentzVector y = t(orient_future(x));
    const double q = quadratic(y);
    const double scale = y.euclidean_norm();
    const double denom = y[0] - y[3];
    if (denom <= 1e-14 * scale)
        throw InvalidInput("point coincides with the ideal center sent to infinity");
    const double height = q < 0.0 ? std::sqrt(-q) / denom : 0.0;
    return {y[1] / denom, y[2] / denom, height};
}

double half_space_distance(const Point3& p, const Point3& q) {
    const double dx = p[0] - q[0];
    const double dy = p[1] - q[1];
    const double dz = p[2] - q[2];
    return std::acosh(1.0 + (dx * dx + dy * dy + dz * dz) / (2.0 * p[2] * q[2]));
}

} // namespace orthopack
