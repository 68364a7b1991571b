#pragma once

#include "isogrow/group_ball.hpp"

#include <cmath>
#include <random>

namespace fixtures {

using isogrow::ConformalMap;
using isogrow::GroupSpec;
using isogrow::Isometry;
using isogrow::Matrix;
using isogrow::Vector;

inline Matrix rotation2(double theta) {
    Matrix r(2, 2);
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}

// Rotation by theta in the plane of axes (i, j) of R^n.
inline Matrix plane_rotation(int n, int i, int j, double theta) {
    Matrix r = Matrix::Identity(n, n);
    r(i, i) = std::cos(theta);
    r(j, j) = std::cos(theta);
    r(i, j) = -std::sin(theta);
    r(j, i) = std::sin(theta);
    return r;
}

inline Vector unit(int n, int axis) {
    Vector v = Vector::Zero(n);
    v(axis) = 1.0;
    return v;
}

// Z^2 of integer translations of the plane.
inline GroupSpec z2_spec() {
    return GroupSpec(2, {Isometry::translation(unit(2, 0)), Isometry::translation(unit(2, 1))});
}

// (2Z)^2, index 4 in z2_spec.
inline GroupSpec two_z2_spec() {
    return GroupSpec(2, {Isometry::translation(2.0 * unit(2, 0)),
                         Isometry::translation(2.0 * unit(2, 1))});
}

// Z^2 embedded as translations of the first two axes of R^5.
inline GroupSpec z2_in_r5_spec() {
    return GroupSpec(5, {Isometry::translation(unit(5, 0)), Isometry::translation(unit(5, 1))});
}

// Screw motions of R^3: rotate about the z axis, translate along it.
inline GroupSpec screw_spec(double angle = 1.0) {
    return GroupSpec(3, {Isometry(plane_rotation(3, 0, 1, angle), unit(3, 2))});
}

// Screw motion of R^4: rotation in the e1-e2 plane, translation along e4.
inline GroupSpec screw4_spec(double angle = 1.0) {
    return GroupSpec(4, {Isometry(plane_rotation(4, 0, 1, angle), unit(4, 3))});
}

// Glide reflection of the plane: reflect across the x axis, shift by e1.
inline GroupSpec glide_spec() {
    Matrix reflect(2, 2);
    reflect << 1.0, 0.0, 0.0, -1.0;
    return GroupSpec(2, {Isometry(reflect, unit(2, 0))});
}

inline Isometry glide_generator() { return glide_spec().generators[0]; }

// Wallpaper group p2: Z^2 translations plus the half turn.
inline GroupSpec p2_spec() {
    return GroupSpec(2, {Isometry::translation(unit(2, 0)), Isometry::translation(unit(2, 1)),
                         Isometry(-Matrix::Identity(2, 2), Vector::Zero(2))});
}

// Finite rotation group {I, -I} of the plane.
inline GroupSpec half_turn_spec() {
    return GroupSpec(2, {Isometry(-Matrix::Identity(2, 2), Vector::Zero(2))});
}

// Haar-ish random orthogonal matrix via QR of a Gaussian matrix.
inline Matrix random_orthogonal(int n, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = gauss(rng);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < n; ++c) {
        if (r(c, c) < 0.0) {
            q.col(c) = -q.col(c);
        }
    }
    return q;
}

inline Matrix random_rotation(int n, std::mt19937& rng) {
    Matrix q = random_orthogonal(n, rng);
    if (q.determinant() < 0.0) {
        q.col(0) = -q.col(0);
    }
    return q;
}

inline Isometry random_isometry(int n, std::mt19937& rng, double tran_scale = 2.0) {
    std::uniform_real_distribution<double> coord(-tran_scale, tran_scale);
    Vector t(n);
    for (int c = 0; c < n; ++c) {
        t(c) = coord(rng);
    }
    return Isometry(random_orthogonal(n, rng), t);
}

inline Vector random_unit(int n, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(n);
    do {
        for (int c = 0; c < n; ++c) {
            v(c) = gauss(rng);
        }
    } while (v.norm() < 1e-8);
    return v / v.norm();
}

}  // namespace fixtures
