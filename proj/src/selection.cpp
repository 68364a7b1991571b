#include "isogrow/selection.hpp"

#include "isogrow/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace isogrow {

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double kClusterGap = 1e-7;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

HalfLine::HalfLine(Vector d, double tol) : direction(std::move(d)) {
    if (std::abs(direction.norm() - 1.0) > tol) {
        throw std::invalid_argument("HalfLine: direction must be a unit vector");
    }
}

Matrix orthogonal_complement_basis(const AffineSubspace& V) {
    const int n = V.ambient_dim();
    const int k = V.dim();
    if (k == 0) {
        return Matrix::Identity(n, n);
    }
    Eigen::HouseholderQR<Matrix> qr(V.basis);
    const Matrix q = qr.householderQ();
    return q.rightCols(n - k);
}

std::vector<Matrix> restrict_orthogonal(const GroupBall& ball, const AffineSubspace& V,
                                        double tol) {
    if (!V.is_linear(tol)) {
        throw std::invalid_argument("restrict_orthogonal: V must be linear");
    }
    const Matrix q2 = orthogonal_complement_basis(V);
    std::vector<Matrix> out;
    std::unordered_map<QuantKey, std::vector<std::size_t>, QuantKeyHash> seen;
    for (std::size_t idx : ball.indices_within(ball.radius())) {
        const Matrix& ort = ball.explored()[idx].ort;
        // V-perp must be invariant, i.e. ort * q2 has no V-component.
        if (V.dim() > 0 && (V.basis.transpose() * (ort * q2)).norm() >
                               tol * std::sqrt(static_cast<double>(ball.spec().dim))) {
            throw std::invalid_argument(
                "restrict_orthogonal: orthogonal part does not preserve V-perp");
        }
        Matrix m = q2.transpose() * ort * q2;
        const QuantKey key = quantize(m);
        auto& bucket = seen[key];
        bool dup = false;
        for (std::size_t j : bucket) {
            if ((out[j] - m).norm() <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            bucket.push_back(out.size());
            out.push_back(std::move(m));
        }
    }
    return out;
}

namespace {

// Split the subspace spanned by the orthonormal columns of `u` along the
// eigenvalue clusters of the Hermitian matrix `h` (given in ambient
// coordinates).
std::vector<CMatrix> refine_by_hermitian(const CMatrix& u, const CMatrix& h) {
    const auto d = u.cols();
    if (d <= 1) {
        return {u};
    }
    const CMatrix k = u.adjoint() * h * u;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(k);
    const Vector vals = es.eigenvalues();
    const CMatrix vecs = es.eigenvectors();

    std::vector<CMatrix> parts;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= d; ++i) {
        if (i == d || vals(i) - vals(i - 1) > kClusterGap) {
            parts.push_back(u * vecs.middleCols(start, i - start));
            start = i;
        }
    }
    return parts;
}

// Orthonormal real basis of the real subspace underlying a conjugation
// invariant complex subspace.
Matrix realize_real_basis(const CMatrix& u) {
    const auto n = u.rows();
    const auto d = u.cols();
    Matrix candidates(n, 2 * d);
    candidates << u.real(), u.imag();
    Eigen::ColPivHouseholderQR<Matrix> qr(candidates);
    qr.setThreshold(1e-8);
    const auto rank = qr.rank();
    Matrix q = qr.householderQ();
    return q.leftCols(rank);
}

}  // namespace

BlockDecomposition simultaneous_block_diagonalize(const std::vector<Matrix>& mats, double tol,
                                                  double theta_tol) {
    if (mats.empty()) {
        throw std::invalid_argument("simultaneous_block_diagonalize: empty input family");
    }
    const int n = static_cast<int>(mats[0].rows());
    for (const Matrix& m : mats) {
        if (m.rows() != n || m.cols() != n) {
            throw std::invalid_argument("simultaneous_block_diagonalize: size mismatch");
        }
        if ((m.transpose() * m - Matrix::Identity(n, n)).norm() >
            tol * std::sqrt(static_cast<double>(n))) {
            throw std::invalid_argument("simultaneous_block_diagonalize: input not orthogonal");
        }
    }
    for (std::size_t i = 0; i < mats.size(); ++i) {
        for (std::size_t j = i + 1; j < mats.size(); ++j) {
            if ((mats[i] * mats[j] - mats[j] * mats[i]).norm() >
                tol * std::sqrt(static_cast<double>(n))) {
                std::ostringstream msg;
                msg << "simultaneous_block_diagonalize: matrices " << i << " and " << j
                    << " do not commute";
                throw std::invalid_argument(msg.str());
            }
        }
    }

    // Joint eigenspaces by successive Hermitian refinement: an orthogonal
    // matrix is unitary, so it shares eigenvectors with its Hermitian
    // "cosine" and skew "sine" parts, whose eigenvectors can be chosen
    // orthonormal even in degenerate clusters.
    std::vector<CMatrix> subspaces{CMatrix::Identity(n, n)};
    for (const Matrix& m : mats) {
        const CMatrix mc = m.cast<std::complex<double>>();
        const CMatrix h1 = (mc + mc.adjoint()) / 2.0;
        const CMatrix h2 = (mc - mc.adjoint()) / std::complex<double>(0.0, 2.0);
        for (const CMatrix& h : {h1, h2}) {
            std::vector<CMatrix> next;
            for (const CMatrix& u : subspaces) {
                for (CMatrix& part : refine_by_hermitian(u, h)) {
                    next.push_back(std::move(part));
                }
            }
            subspaces = std::move(next);
        }
    }

    std::vector<AffineSubspace> blocks;
    const Vector origin = Vector::Zero(n);
    for (const CMatrix& u : subspaces) {
        // Assemble the eigenvalue of each family member on this joint
        // eigenspace; the first nonreal one decides the complex pairing.
        bool is_real = true;
        double first_sin = 0.0;
        for (const Matrix& m : mats) {
            const CMatrix k = u.adjoint() * m.cast<std::complex<double>>() * u;
            const std::complex<double> lambda = k.trace() / static_cast<double>(u.cols());
            if (std::abs(lambda.imag()) > theta_tol) {
                is_real = false;
                first_sin = lambda.imag();
                break;
            }
        }
        if (is_real) {
            const Matrix rb = realize_real_basis(u);
            for (int c = 0; c < rb.cols(); ++c) {
                blocks.emplace_back(origin, rb.col(c));
            }
        } else if (first_sin > 0.0) {
            // Keep one of each conjugate pair; the partner subspace yields
            // the same real planes.
            for (int c = 0; c < u.cols(); ++c) {
                const CVector col = u.col(c);
                Matrix plane(n, 2);
                plane.col(0) = std::numbers::sqrt2 * col.real();
                plane.col(1) = -std::numbers::sqrt2 * col.imag();
                blocks.emplace_back(origin, std::move(plane));
            }
        }
    }

    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const AffineSubspace& a, const AffineSubspace& b) {
                         return a.dim() < b.dim();
                     });

    // Validate the advertised invariants before returning.
    int total = 0;
    for (const AffineSubspace& b : blocks) {
        total += b.dim();
        for (const Matrix& m : mats) {
            const Matrix image = m * b.basis;
            if ((image - b.basis * (b.basis.transpose() * image)).norm() >
                tol * std::sqrt(static_cast<double>(n)) * 10.0) {
                throw std::runtime_error(
                    "simultaneous_block_diagonalize: block invariance failed");
            }
        }
    }
    if (total != n) {
        throw std::runtime_error("simultaneous_block_diagonalize: block dimensions do not sum");
    }

    BlockDecomposition decomp;
    decomp.blocks = std::move(blocks);
    decomp.ambient_dim = n;
    return decomp;
}

std::pair<HalfLine, HalfLine> select_orthogonal_halflines(const BlockDecomposition& decomp) {
    if (decomp.blocks.size() < 2) {
        throw std::invalid_argument(
            "select_orthogonal_halflines: need at least two invariant blocks");
    }
    return {HalfLine(decomp.blocks[0].basis.col(0)), HalfLine(decomp.blocks[1].basis.col(0))};
}

std::vector<Vector> sphere_grid(int dim, int count) {
    if (dim < 2 || count < 1) {
        throw std::invalid_argument("sphere_grid: need dim >= 2 and count >= 1");
    }
    std::vector<Vector> pts;
    pts.reserve(static_cast<std::size_t>(count));
    if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / count;
            Vector p(2);
            p << std::cos(a), std::sin(a);
            pts.push_back(std::move(p));
        }
    } else if (dim == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < count; ++i) {
            const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / count;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = golden * static_cast<double>(i);
            Vector p(3);
            p << rho * std::cos(a), rho * std::sin(a), z;
            pts.push_back(std::move(p));
        }
    } else {
        std::mt19937 rng(0x5eedu);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < count; ++i) {
            Vector p(dim);
            do {
                for (int c = 0; c < dim; ++c) {
                    p(c) = gauss(rng);
                }
            } while (p.norm() < 1e-8);
            pts.push_back(p / p.norm());
        }
    }
    return pts;
}

namespace {

struct SequenceSoA {
    std::vector<double> data;  // coordinate-major
    std::vector<double> weights;
    std::size_t count = 0;
    std::size_t dim = 0;
};

SequenceSoA pack_sequence(const std::vector<Vector>& seq, double eps) {
    SequenceSoA soa;
    soa.count = seq.size();
    soa.dim = static_cast<std::size_t>(seq[0].size());
    soa.data.resize(soa.count * soa.dim);
    soa.weights.resize(soa.count);
    const double m = static_cast<double>(soa.dim) - 1.0;
    for (std::size_t j = 0; j < soa.count; ++j) {
        for (std::size_t d = 0; d < soa.dim; ++d) {
            soa.data[d * soa.count + j] = seq[j](static_cast<int>(d));
        }
        soa.weights[j] = std::pow(static_cast<double>(j + 1), 1.0 / m + eps);
    }
    return soa;
}

double score_packed(const SequenceSoA& soa, const Vector& y, std::vector<double>& dots) {
    kernels::dot_products(soa.data.data(), soa.count, soa.dim, y.data(), dots.data());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < soa.count; ++j) {
        const double d = std::acos(clamp_unit(dots[j])) * soa.weights[j];
        best = std::min(best, d);
    }
    return best;
}

}  // namespace

double sphere_maximin_score(const std::vector<Vector>& seq, double eps, const Vector& y) {
    if (seq.empty()) {
        throw std::invalid_argument("sphere_maximin_score: empty sequence");
    }
    const SequenceSoA soa = pack_sequence(seq, eps);
    std::vector<double> dots(soa.count);
    return score_packed(soa, y, dots);
}

AvoidancePoint sphere_avoidance_point(const std::vector<Vector>& seq, double eps, int grid_res) {
    if (seq.empty()) {
        throw std::invalid_argument("sphere_avoidance_point: empty sequence");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("sphere_avoidance_point: eps must be positive");
    }
    if (grid_res < 2) {
        throw std::invalid_argument("sphere_avoidance_point: grid_res must be >= 2");
    }
    const int dim = static_cast<int>(seq[0].size());
    if (dim < 2) {
        throw std::invalid_argument("sphere_avoidance_point: points must live in R^m, m >= 2");
    }
    for (const Vector& x : seq) {
        if (x.size() != dim || std::abs(x.norm() - 1.0) > 1e-6) {
            throw std::invalid_argument("sphere_avoidance_point: points must be unit vectors");
        }
    }

    const SequenceSoA soa = pack_sequence(seq, eps);
    std::vector<double> dots(soa.count);

    Vector best = seq[0];
    double best_score = -1.0;
    for (const Vector& y : sphere_grid(dim, grid_res)) {
        const double s = score_packed(soa, y, dots);
        if (s > best_score) {
            best_score = s;
            best = y;
        }
    }

    // Local golden-section refinement along great circles through the
    // current best point, one tangent direction at a time.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double step = dim == 2 ? 2.0 * std::numbers::pi / grid_res
                           : 2.0 * std::sqrt(std::numbers::pi / grid_res);
    for (int pass = 0; pass < 20; ++pass) {
        const Matrix tangent = orthogonal_complement_basis(
            AffineSubspace(Vector::Zero(dim), best / best.norm()));
        for (int t = 0; t < tangent.cols(); ++t) {
            const Vector u = tangent.col(t);
            const auto eval = [&](double angle) {
                Vector y = std::cos(angle) * best + std::sin(angle) * u;
                return score_packed(soa, y / y.norm(), dots);
            };
            double lo = -step, hi = step;
            double x1 = hi - golden * (hi - lo);
            double x2 = lo + golden * (hi - lo);
            double f1 = eval(x1);
            double f2 = eval(x2);
            for (int it = 0; it < 24; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + golden * (hi - lo);
                    f2 = eval(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - golden * (hi - lo);
                    f1 = eval(x1);
                }
            }
            const double angle = f1 > f2 ? x1 : x2;
            const double value = f1 > f2 ? f1 : f2;
            if (value > best_score) {
                Vector y = std::cos(angle) * best + std::sin(angle) * u;
                best = y / y.norm();
                best_score = value;
            }
        }
        step *= 0.6;
    }

    AvoidancePoint result;
    result.y = best;
    result.C_emp = score_packed(soa, best, dots);
    result.eps = eps;
    return result;
}

double length_lower_bound(int n, int k, int l, double eps, double s, double C) {
    if (!(k > 0 && k < n - 1)) {
        throw std::domain_error("length_lower_bound: need 0 < k < n-1");
    }
    if (!(l >= 0 && l <= k && l < n - 1)) {
        throw std::domain_error("length_lower_bound: need 0 <= l <= k and l < n-1");
    }
    if (!(s >= 1.0)) {
        throw std::domain_error("length_lower_bound: need s >= 1");
    }
    if (!(C > 0.0)) {
        throw std::domain_error("length_lower_bound: need C > 0");
    }
    if (eps < 0.0) {
        throw std::domain_error("length_lower_bound: need eps >= 0");
    }
    const double exponent =
        static_cast<double>(n - k - 1) / static_cast<double>(n - l - 1) - eps;
    return C * std::pow(s, exponent);
}

double brute_force_min_connection(const GroupBall& ball, const AffineSubspace& V,
                                  const HalfLine& L1, const HalfLine& L2, double s) {
    if (!(s > 0.0)) {
        throw std::invalid_argument("brute_force_min_connection: s must be positive");
    }
    const int n = V.ambient_dim();
    if (L1.direction.size() != n || L2.direction.size() != n) {
        throw std::invalid_argument("brute_force_min_connection: dimension mismatch");
    }
    const double ortho_tol = 1e-9;
    if (V.dim() > 0 && ((V.basis.transpose() * L1.direction).norm() > ortho_tol ||
                        (V.basis.transpose() * L2.direction).norm() > ortho_tol)) {
        throw std::invalid_argument("brute_force_min_connection: half-lines must lie in V-perp");
    }
    if (V.dim() == n) {
        throw std::runtime_error("brute_force_min_connection: V-perp is trivial");
    }
    if (ball.explored().empty()) {
        throw std::runtime_error("brute_force_min_connection: ball is empty");
    }

    constexpr std::size_t kSamples = 2048;
    std::vector<double> ugrid(kSamples);
    std::vector<double> qsoa(kSamples * static_cast<std::size_t>(n));
    std::vector<double> qnorm2(kSamples);
    std::vector<double> qdot1(kSamples);
    std::vector<double> basis_dots(kSamples);

    double best = std::numeric_limits<double>::infinity();

    for (std::size_t idx : ball.indices_within(ball.radius())) {
        const Isometry& g = ball.explored()[idx];
        const Vector w = g.ort * L2.direction;
        const Vector& t = g.tran;
        const double umax = 4.0 * (s + t.norm() + 1.0);

        for (std::size_t i = 0; i < kSamples; ++i) {
            ugrid[i] = umax * static_cast<double>(i) / static_cast<double>(kSamples - 1);
        }
        // q(u) = u * w + t, built coordinate-wise.
        for (int c = 0; c < n; ++c) {
            kernels::scale_shift(ugrid.data(), kSamples, w(c), t(c),
                                 qsoa.data() + static_cast<std::size_t>(c) * kSamples);
        }
        kernels::squared_norms(qsoa.data(), kSamples, static_cast<std::size_t>(n), qnorm2.data());
        kernels::dot_products(qsoa.data(), kSamples, static_cast<std::size_t>(n),
                              L1.direction.data(), qdot1.data());

        // Squared distance to V of each q: |q - base|^2 minus the V-component.
        std::vector<double> clearance2 = qnorm2;
        if (!V.is_linear(ortho_tol)) {
            for (std::size_t i = 0; i < kSamples; ++i) {
                double acc = 0.0;
                for (int c = 0; c < n; ++c) {
                    const double d =
                        qsoa[static_cast<std::size_t>(c) * kSamples + i] - V.base(c);
                    acc += d * d;
                }
                clearance2[i] = acc;
            }
        }
        for (int b = 0; b < V.dim(); ++b) {
            const Vector col = V.basis.col(b);
            kernels::dot_products(qsoa.data(), kSamples, static_cast<std::size_t>(n), col.data(),
                                  basis_dots.data());
            const double base_dot = V.is_linear(ortho_tol) ? 0.0 : V.base.dot(col);
            for (std::size_t i = 0; i < kSamples; ++i) {
                const double d = basis_dots[i] - base_dot;
                clearance2[i] -= d * d;
            }
        }

        const auto segment_length = [&](double u) {
            const Vector q = u * w + t;
            if (V.distance(q) < s - 1e-12) {
                return std::numeric_limits<double>::infinity();
            }
            const double tstar = std::max(s, L1.direction.dot(q));
            return (tstar * L1.direction - q).norm();
        };

        double local_best = std::numeric_limits<double>::infinity();
        double local_u = 0.0;
        for (std::size_t i = 0; i < kSamples; ++i) {
            if (clearance2[i] < s * s - 1e-12) {
                continue;
            }
            const double tstar = std::max(s, qdot1[i]);
            const double len2 = tstar * tstar - 2.0 * tstar * qdot1[i] + qnorm2[i];
            if (len2 < local_best) {
                local_best = len2;
                local_u = ugrid[i];
            }
        }
        if (!std::isfinite(local_best)) {
            continue;
        }

        // Golden-section polish around the best sample.
        const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
        const double span = umax / static_cast<double>(kSamples - 1);
        double lo = std::max(0.0, local_u - span);
        double hi = local_u + span;
        double x1 = hi - golden * (hi - lo);
        double x2 = lo + golden * (hi - lo);
        double f1 = segment_length(x1);
        double f2 = segment_length(x2);
        for (int it = 0; it < 48; ++it) {
            if (f1 > f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = segment_length(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = segment_length(x1);
            }
        }
        best = std::min({best, std::sqrt(local_best), f1, f2});
    }

    if (!std::isfinite(best)) {
        throw std::runtime_error(
            "brute_force_min_connection: no admissible segment for any group element");
    }
    return best;
}

}  // namespace isogrow
