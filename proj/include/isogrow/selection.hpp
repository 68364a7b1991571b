#pragma once

#include "isogrow/group_ball.hpp"

#include <utility>

namespace isogrow {

// Origin-anchored ray [0, inf) * direction, |direction| = 1.
struct HalfLine {
    Vector direction;
    explicit HalfLine(Vector d, double tol = kDefaultTol);
};

// Pairwise orthogonal invariant subspaces of dimension 1 or 2 summing to
// the ambient dimension; 1-dim blocks carry a real eigenvalue +/-1, 2-dim
// blocks a conjugate complex pair.
struct BlockDecomposition {
    std::vector<AffineSubspace> blocks;
    int ambient_dim = 0;
};

// Orthonormal basis of the orthogonal complement of the direction space of
// V, as columns of an n x (n - dim V) matrix.
Matrix orthogonal_complement_basis(const AffineSubspace& V);

// The orthogonal parts of the ball elements expressed in an orthonormal
// basis of V-perp, tau-deduplicated. V must be linear and invariant under
// every orthogonal part.
std::vector<Matrix> restrict_orthogonal(const GroupBall& ball, const AffineSubspace& V,
                                        double tol = kDefaultTol);

// Splits the common space into invariant blocks of dimension 1 or 2 for a
// family of commuting orthogonal matrices. Eigenvalues within theta_tol of
// +/-1 are treated as real. Non-commuting inputs raise an error naming the
// offending pair.
BlockDecomposition simultaneous_block_diagonalize(const std::vector<Matrix>& mats,
                                                  double tol = kDefaultTol,
                                                  double theta_tol = 1e-8);

// One ray inside each of the first two blocks; every family matrix then
// maps the second ray into a space orthogonal to the first. Requires at
// least two blocks.
std::pair<HalfLine, HalfLine> select_orthogonal_halflines(const BlockDecomposition& decomp);

// Point on the sphere scoring maximin of d(y, x_j) * j^(1/m + eps), with
// the empirical constant achieved.
struct AvoidancePoint {
    Vector y;
    double C_emp = 0.0;
    double eps = 0.0;
};

// Deterministic quasi-uniform points on the unit sphere of R^dim: uniform
// angles for dim 2, a Fibonacci spiral for dim 3, seeded random directions
// above.
std::vector<Vector> sphere_grid(int dim, int count);

// min over j of d_geo(y, x_j) * j^(1/m + eps), the quantity the avoidance
// point maximizes.
double sphere_maximin_score(const std::vector<Vector>& seq, double eps, const Vector& y);

// Coarse grid of grid_res candidates followed by golden-section refinement
// along great circles.
AvoidancePoint sphere_avoidance_point(const std::vector<Vector>& seq, double eps, int grid_res);

// C * s^((n-k-1)/(n-l-1) - eps), the path-length lower bound exponent for
// ambient dimension n, group dimension k, translation dimension l.
double length_lower_bound(int n, int k, int l, double eps, double s, double C);

// Minimum straight-segment length between p in L1 and q in gamma(L2) over
// the enumerated gamma, subject to d(p, V) >= s and d(q, V) >= s. Dense
// sampling oracle with closed-form optimization over the L1 parameter.
double brute_force_min_connection(const GroupBall& ball, const AffineSubspace& V,
                                  const HalfLine& L1, const HalfLine& L2, double s);

}  // namespace isogrow
