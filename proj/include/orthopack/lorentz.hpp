#pragma once

#include <array>
#include <string_view>

#include <Eigen/Core>

namespace orthopack {

using Point3 = std::array<double, 3>;

/// Homogeneous coordinates (x0; x1, x2, x3) in signature-(1,3) space.
/// Equality is projective; representatives are never normalised implicitly.
class LorentzVector {
public:
    LorentzVector() = default;
    LorentzVector(double x0, double x1, double x2, double x3) : v_(x0, x1, x2, x3) {}
    explicit LorentzVector(const Eigen::Vector4d& v) : v_(v) {}

    double operator[](int i) const { return v_[i]; }
    double& operator[](int i) { return v_[i]; }
    const Eigen::Vector4d& coeffs() const { return v_; }

    LorentzVector operator+(const LorentzVector& o) const { return LorentzVector(Eigen::Vector4d(v_ + o.v_)); }
    LorentzVector operator-(const LorentzVector& o) const { return LorentzVector(Eigen::Vector4d(v_ - o.v_)); }
    LorentzVector operator-() const { return LorentzVector(Eigen::Vector4d(-v_)); }
    LorentzVector operator*(double c) const { return LorentzVector(Eigen::Vector4d(c * v_)); }
    friend LorentzVector operator*(double c, const LorentzVector& x) { return x * c; }

    double euclidean_norm() const { return v_.norm(); }
    bool is_zero() const { return v_.cwiseAbs().maxCoeff() == 0.0; }

private:
    Eigen::Vector4d v_ = Eigen::Vector4d::Zero();
};

enum class PointClass { Proper, Ideal, UltraIdeal };

std::string_view to_string(PointClass c);

struct Tolerance {
    double eps_class = 1e-9;
    double eps_gram = 1e-12;
};

/// Unit spacelike normal u of the plane {x : <x,u> = 0}. The positive side
/// <x,u> > 0 is the interior side wherever a cell is involved.
class Hyperplane {
public:
    /// Normalises `normal` to <u,u> = 1; throws InvalidInput unless spacelike.
    static Hyperplane from_normal(const LorentzVector& normal);

    const LorentzVector& normal() const { return u_; }
    Hyperplane flipped() const { return Hyperplane(-u_); }

private:
    explicit Hyperplane(const LorentzVector& u) : u_(u) {}
    LorentzVector u_;
};

/// Lorentz (form-preserving) linear map.
class Transform {
public:
    Transform() : m_(Eigen::Matrix4d::Identity()) {}
    explicit Transform(const Eigen::Matrix4d& m) : m_(m) {}

    static Transform identity() { return Transform(); }

    LorentzVector apply(const LorentzVector& x) const { return LorentzVector(Eigen::Vector4d(m_ * x.coeffs())); }
    LorentzVector operator()(const LorentzVector& x) const { return apply(x); }
    Transform operator*(const Transform& o) const { return Transform(Eigen::Matrix4d(m_ * o.m_)); }
    /// Inverse via J M^T J, valid for any Lorentz matrix.
    Transform inverse() const;

    const Eigen::Matrix4d& matrix() const { return m_; }
    /// max |M^T J M - J|.
    double form_defect() const;

private:
    Eigen::Matrix4d m_;
};

double bilinear(const LorentzVector& x, const LorentzVector& y);

inline double quadratic(const LorentzVector& x) { return bilinear(x, x); }

PointClass classify(const LorentzVector& x, const Tolerance& tol = {});

/// Proper representative with <x,x> = -1 and x0 > 0.
LorentzVector normalize_proper(const LorentzVector& x);
/// Null or ultra-ideal representative flipped to x0 >= 0 (no rescaling).
LorentzVector orient_future(const LorentzVector& x);

/// Hyperbolic distance between two proper points (curvature -1).
double distance(const LorentzVector& x, const LorentzVector& y);

Hyperplane polar(const LorentzVector& x, const Tolerance& tol = {});

LorentzVector reflect(const Hyperplane& u, const LorentzVector& x);

/// Orthogonal projection a - <a,u>u. Throws NumericalFailure when the image
/// is not a proper point.
LorentzVector project_to_plane(const LorentzVector& a, const Hyperplane& u);

double plane_distance(const LorentzVector& x, const Hyperplane& u);

/// Beltrami-Cayley-Klein coordinates (x1/x0, x2/x0, x3/x0).
Point3 klein_coords(const LorentzVector& x);
LorentzVector from_klein(const Point3& p);

/// Rotation T (fixing (1,0,0,0)) with T(ideal) proportional to (1,0,0,1).
/// Composed of a rotation in the (x1,x2) plane followed by one in (x2,x3).
Transform rotation_to_pole(const LorentzVector& ideal, double* phi = nullptr, double* theta = nullptr);

/// Upper half-space image with `ideal_center` sent to vertical infinity.
/// Proper points get height > 0, ideal points height 0.
Point3 to_half_space(const LorentzVector& x, const LorentzVector& ideal_center);

/// Distance between two points of the upper half-space model.
double half_space_distance(const Point3& p, const Point3& q);

} // namespace orthopack
