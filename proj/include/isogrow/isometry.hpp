#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace isogrow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Global comparison tolerance. Screw motions with irrational angles rule
// out exact arithmetic, so everything is double precision with explicit
// tolerances.
inline constexpr double kDefaultTol = 1e-9;
// Quantization grid for hashing elements; candidates that share a cell are
// confirmed with an exact tolerance comparison.
inline constexpr double kHashGrid = 1e-6;
// Singular values below this are treated as zero in rank decisions.
inline constexpr double kRankTol = 1e-8;

// A Euclidean isometry x -> ort * x + tran with ort orthogonal.
struct Isometry {
    Matrix ort;
    Vector tran;

    Isometry(Matrix o, Vector t, double tol = kDefaultTol);

    static Isometry identity(int n);
    static Isometry translation(const Vector& t);

    int dim() const { return static_cast<int>(tran.size()); }
    Vector apply(const Vector& x) const { return ort * x + tran; }
    bool is_translation(double tol = kDefaultTol) const;
    bool is_identity(double tol = kDefaultTol) const;
};

// A linear conformal bijection x -> scale * rot * x with scale > 0 and
// rot special orthogonal. Expanding means scale > 1.
struct ConformalMap {
    double scale;
    Matrix rot;

    ConformalMap(double s, Matrix r, double tol = kDefaultTol);

    static ConformalMap scaling(int n, double s);

    int dim() const { return static_cast<int>(rot.rows()); }
    bool expanding() const { return scale > 1.0; }
    ConformalMap inverse() const;
    Vector apply(const Vector& x) const { return scale * (rot * x); }
};

// base + span(basis columns); basis columns are orthonormal and may be
// empty (a single point).
struct AffineSubspace {
    Vector base;
    Matrix basis;

    AffineSubspace(Vector base, Matrix basis, double tol = kDefaultTol);

    static AffineSubspace full(int n);
    static AffineSubspace point(const Vector& p);

    int ambient_dim() const { return static_cast<int>(base.size()); }
    int dim() const { return static_cast<int>(basis.cols()); }
    Vector project(const Vector& x) const;
    double distance(const Vector& x) const;
    bool is_linear(double tol = kDefaultTol) const { return base.norm() <= tol; }
};

Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);

// theta_A(g) = A g A^{-1}; translations transform as tran -> scale*rot*tran.
Isometry conjugate_by_conformal(const ConformalMap& A, const Isometry& g);

// g h g^{-1} h^{-1}
Isometry commutator(const Isometry& g, const Isometry& h);

// Solution set of g(x) = x, or nullopt when there is no fixed point.
std::optional<AffineSubspace> fixed_point_space(const Isometry& g);

// Smallest m <= m_max with ||Q^m - id|| < eps in the operator norm, or
// nullopt when no such power exists in range.
std::optional<long> power_near_identity(const Matrix& Q, double eps, long m_max);

// Largest singular value.
double operator_norm(const Matrix& m);

// max(Frobenius distance of orthogonal parts, Euclidean distance of
// translation parts); the metric used for deduplication.
double isometry_distance(const Isometry& g, const Isometry& h);
bool approx_equal(const Isometry& g, const Isometry& h, double tol = kDefaultTol);

// Quantized key for hash-based deduplication.
using QuantKey = std::vector<std::int64_t>;
QuantKey quantize(const Isometry& g, double grid = kHashGrid);
QuantKey quantize(const Matrix& m, double grid = kHashGrid);

struct QuantKeyHash {
    std::size_t operator()(const QuantKey& key) const;
};

}  // namespace isogrow
