#include "isogrow/isometry.hpp"

#include <cmath>
#include <stdexcept>

namespace isogrow {

namespace {

void check_orthogonal(const Matrix& m, double tol, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square, n >= 1");
    }
    const double residual =
        (m.transpose() * m - Matrix::Identity(m.rows(), m.cols())).norm();
    if (residual > tol * std::sqrt(static_cast<double>(m.rows()))) {
        throw std::invalid_argument(std::string(what) + ": matrix is not orthogonal");
    }
}

}  // namespace

Isometry::Isometry(Matrix o, Vector t, double tol) : ort(std::move(o)), tran(std::move(t)) {
    check_orthogonal(ort, tol, "Isometry");
    if (ort.rows() != tran.size()) {
        throw std::invalid_argument("Isometry: matrix and translation dimensions disagree");
    }
}

Isometry Isometry::identity(int n) {
    return Isometry(Matrix::Identity(n, n), Vector::Zero(n));
}

Isometry Isometry::translation(const Vector& t) {
    return Isometry(Matrix::Identity(t.size(), t.size()), t);
}

bool Isometry::is_translation(double tol) const {
    return (ort - Matrix::Identity(dim(), dim())).norm() <= tol;
}

bool Isometry::is_identity(double tol) const {
    return is_translation(tol) && tran.norm() <= tol;
}

ConformalMap::ConformalMap(double s, Matrix r, double tol) : scale(s), rot(std::move(r)) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("ConformalMap: scale must be positive");
    }
    check_orthogonal(rot, tol, "ConformalMap");
    if (rot.determinant() < 0.0) {
        throw std::invalid_argument("ConformalMap: rotation must preserve orientation");
    }
}

ConformalMap ConformalMap::scaling(int n, double s) {
    return ConformalMap(s, Matrix::Identity(n, n));
}

ConformalMap ConformalMap::inverse() const {
    return ConformalMap(1.0 / scale, rot.transpose());
}

AffineSubspace::AffineSubspace(Vector b, Matrix bs, double tol)
    : base(std::move(b)), basis(std::move(bs)) {
    if (basis.cols() > 0 && basis.rows() != base.size()) {
        throw std::invalid_argument("AffineSubspace: basis and base dimensions disagree");
    }
    if (basis.cols() == 0) {
        basis.resize(base.size(), 0);
    }
    if (basis.cols() > basis.rows()) {
        throw std::invalid_argument("AffineSubspace: more basis vectors than ambient dimension");
    }
    const Matrix gram = basis.transpose() * basis;
    const double residual =
        (gram - Matrix::Identity(basis.cols(), basis.cols())).norm();
    if (residual > tol * std::sqrt(static_cast<double>(basis.rows()))) {
        throw std::invalid_argument("AffineSubspace: basis is not orthonormal");
    }
}

AffineSubspace AffineSubspace::full(int n) {
    return AffineSubspace(Vector::Zero(n), Matrix::Identity(n, n));
}

AffineSubspace AffineSubspace::point(const Vector& p) {
    return AffineSubspace(p, Matrix(p.size(), 0));
}

Vector AffineSubspace::project(const Vector& x) const {
    return base + basis * (basis.transpose() * (x - base));
}

double AffineSubspace::distance(const Vector& x) const { return (x - project(x)).norm(); }

Isometry compose(const Isometry& g, const Isometry& h) {
    if (g.dim() != h.dim()) {
        throw std::invalid_argument("compose: dimension mismatch");
    }
    return Isometry(g.ort * h.ort, g.ort * h.tran + g.tran);
}

Isometry inverse(const Isometry& g) {
    Matrix inv = g.ort.transpose();
    return Isometry(inv, -(inv * g.tran));
}

Isometry conjugate_by_conformal(const ConformalMap& A, const Isometry& g) {
    if (A.dim() != g.dim()) {
        throw std::invalid_argument("conjugate_by_conformal: dimension mismatch");
    }
    return Isometry(A.rot * g.ort * A.rot.transpose(), A.scale * (A.rot * g.tran));
}

Isometry commutator(const Isometry& g, const Isometry& h) {
    return compose(g, compose(h, compose(inverse(g), inverse(h))));
}

std::optional<AffineSubspace> fixed_point_space(const Isometry& g) {
    const int n = g.dim();
    const Matrix m = g.ort - Matrix::Identity(n, n);
    const Vector b = -g.tran;

    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > kRankTol) {
        ++rank;
    }

    // Minimum-norm solution of (ort - I) x = -tran.
    Vector y = svd.matrixU().transpose() * b;
    Vector coeff = Vector::Zero(n);
    for (int i = 0; i < rank; ++i) {
        coeff(i) = y(i) / sv(i);
    }
    const Vector x0 = svd.matrixV() * coeff;
    if ((m * x0 - b).norm() > kRankTol) {
        return std::nullopt;
    }
    Matrix null_basis = svd.matrixV().rightCols(n - rank);
    return AffineSubspace(x0, std::move(null_basis));
}

std::optional<long> power_near_identity(const Matrix& Q, double eps, long m_max) {
    check_orthogonal(Q, kDefaultTol, "power_near_identity");
    if (!(eps > 0.0)) {
        throw std::invalid_argument("power_near_identity: eps must be positive");
    }
    if (m_max < 1) {
        throw std::invalid_argument("power_near_identity: m_max must be >= 1");
    }
    const Matrix id = Matrix::Identity(Q.rows(), Q.cols());
    Matrix p = Q;
    for (long m = 1; m <= m_max; ++m) {
        if (operator_norm(p - id) < eps) {
            return m;
        }
        p = p * Q;
    }
    return std::nullopt;
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double isometry_distance(const Isometry& g, const Isometry& h) {
    return std::max((g.ort - h.ort).norm(), (g.tran - h.tran).norm());
}

bool approx_equal(const Isometry& g, const Isometry& h, double tol) {
    return g.dim() == h.dim() && isometry_distance(g, h) <= tol;
}

QuantKey quantize(const Isometry& g, double grid) {
    QuantKey key;
    key.reserve(static_cast<std::size_t>(g.ort.size() + g.tran.size()));
    for (int c = 0; c < g.ort.cols(); ++c) {
        for (int r = 0; r < g.ort.rows(); ++r) {
            key.push_back(std::llround(g.ort(r, c) / grid));
        }
    }
    for (int r = 0; r < g.tran.size(); ++r) {
        key.push_back(std::llround(g.tran(r) / grid));
    }
    return key;
}

QuantKey quantize(const Matrix& m, double grid) {
    QuantKey key;
    key.reserve(static_cast<std::size_t>(m.size()));
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < m.rows(); ++r) {
            key.push_back(std::llround(m(r, c) / grid));
        }
    }
    return key;
}

std::size_t QuantKeyHash::operator()(const QuantKey& key) const {
    // FNV-1a over the 64-bit entries.
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t v : key) {
        auto u = static_cast<std::uint64_t>(v);
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (u >> (8 * byte)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    }
    return static_cast<std::size_t>(h);
}

}  // namespace isogrow
