#include "latred/cvp.hpp"

#include "latred/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace latred {

namespace {

// Round half away from zero; the single tie rule used across the project.
inline std::int64_t round_half_away(double x) { return std::llround(x); }

// Upper-triangular coordinates: column j of B has coordinate R(i,j) on the
// i-th orthonormalized Gram-Schmidt direction.
struct Coordinates {
    Matrix r;         // n x n upper triangular
    Vector y;         // target coordinates on the same frame
    double ortho_sq;  // squared norm of the target component outside span(B)
};

Coordinates make_coordinates(const GramSchmidtData& gs, const Vector& target) {
    const Eigen::Index n = gs.norms_sq.size();
    Coordinates co;
    co.r = Matrix::Zero(n, n);
    co.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = std::sqrt(gs.norms_sq(i));
        for (Eigen::Index j = i; j < n; ++j) co.r(i, j) = gs.mu(j, i) * norm;
        co.y(i) = target.dot(gs.orthogonal_vectors.col(i)) / norm;
    }
    co.ortho_sq = std::max(0.0, target.squaredNorm() - co.y.squaredNorm());
    return co;
}

// Depth-first Schnorr-Euchner search over levels n-1..0. At each level,
// children are visited in the zig-zag order c0, c0+s, c0-s, c0+2s, ... with
// c0 = round(center) and s toward the fractional part, so distances are
// non-decreasing and the level can stop at the first child past the bound.
class Enumerator {
  public:
    Enumerator(const Coordinates& co, bool skip_zero)
        : co_(co), n_(co.r.cols()), skip_zero_(skip_zero), c_(n_) {}

    // `bound_sq` and `best` are in-span squared distances.
    void run(double bound_sq, double& best_sq, IntVector& best_c, long long& examined) {
        bound_sq_ = bound_sq;
        best_sq_ = best_sq;
        best_c_ = &best_c;
        examined_ = &examined;
        descend(n_ - 1, 0.0);
        best_sq = best_sq_;
    }

  private:
    void descend(Eigen::Index level, double partial_sq) {
        double center = co_.y(level);
        for (Eigen::Index j = level + 1; j < n_; ++j) center -= co_.r(level, j) * c_(j);
        center /= co_.r(level, level);

        const std::int64_t c0 = round_half_away(center);
        const int s = (center >= static_cast<double>(c0)) ? 1 : -1;
        for (std::int64_t k = 0;; ++k) {
            // k-th zig-zag offset: 0, +s, -s, +2s, -2s, ...
            const std::int64_t off = (k % 2 == 1) ? s * ((k + 1) / 2) : -s * (k / 2);
            const std::int64_t c = c0 + off;
            const double d = co_.r(level, level) * (center - static_cast<double>(c));
            const double acc = partial_sq + d * d;
            if (acc > bound_sq_) break;  // zig-zag distances are non-decreasing
            c_(level) = c;
            if (level == 0) {
                ++*examined_;
                if (!(skip_zero_ && c_.isZero()) && acc < best_sq_) {
                    best_sq_ = acc;
                    *best_c_ = c_;
                    bound_sq_ = std::min(bound_sq_, best_sq_);
                }
            } else {
                descend(level - 1, acc);
            }
        }
    }

    const Coordinates& co_;
    Eigen::Index n_;
    bool skip_zero_;
    IntVector c_;
    double bound_sq_ = 0, best_sq_ = 0;
    IntVector* best_c_ = nullptr;
    long long* examined_ = nullptr;
};

CvpResult finish(const Basis& basis, const Vector& target, IntVector c, long long examined) {
    CvpResult res;
    res.lattice_vector = basis.matrix() * c.cast<double>();
    res.residual_norm_sq = (target - res.lattice_vector).squaredNorm();
    res.coefficients = std::move(c);
    res.candidates_examined = examined;
    return res;
}

void check_enumeration_inputs(const Basis& basis, int enumeration_cap) {
    if (basis.rank() > enumeration_cap)
        throw InvalidInputError("enumeration refused: rank " + std::to_string(basis.rank()) +
                                " exceeds cap " + std::to_string(enumeration_cap));
}

}  // namespace

CvpResult babai_nearest_plane(const GramSchmidtData& gs, const Basis& basis,
                              const Vector& target) {
    const Eigen::Index n = basis.rank();
    if (gs.norms_sq.size() != n || (gs.norms_sq.array() <= 0.0).any())
        throw DegenerateBasisError("babai_nearest_plane: invalid Gram-Schmidt data");
    if (target.size() != basis.ambient_dim())
        throw InvalidInputError("babai_nearest_plane: target has wrong length");

    IntVector c(n);
    Vector r = target;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        const double coef = r.dot(gs.orthogonal_vectors.col(i)) / gs.norms_sq(i);
        c(i) = round_half_away(coef);
        r -= static_cast<double>(c(i)) * basis.matrix().col(i);
    }
    return finish(basis, target, std::move(c), 1);
}

CvpResult enumerate_cvp(const Basis& basis, const Vector& target, int enumeration_cap) {
    check_enumeration_inputs(basis, enumeration_cap);
    if (target.size() != basis.ambient_dim())
        throw InvalidInputError("enumerate_cvp: target has wrong length");
    if (!target.allFinite()) throw InvalidInputError("enumerate_cvp: non-finite target");

    const GramSchmidtData gs = gram_schmidt(basis);
    const Coordinates co = make_coordinates(gs, target);

    CvpResult babai = babai_nearest_plane(gs, basis, target);
    double best_sq = std::max(0.0, babai.residual_norm_sq - co.ortho_sq);
    IntVector best_c = babai.coefficients;
    long long examined = 1;

    Enumerator e(co, /*skip_zero=*/false);
    e.run(best_sq, best_sq, best_c, examined);
    return finish(basis, target, std::move(best_c), examined);
}

CvpResult shortest_vector(const Basis& basis, int enumeration_cap) {
    check_enumeration_inputs(basis, enumeration_cap);
    const GramSchmidtData gs = gram_schmidt(basis);
    const Coordinates co = make_coordinates(gs, Vector::Zero(basis.ambient_dim()));

    Eigen::Index shortest_col = 0;
    basis.matrix().colwise().squaredNorm().minCoeff(&shortest_col);
    double best_sq = basis.matrix().col(shortest_col).squaredNorm();
    IntVector best_c = IntVector::Zero(basis.rank());
    best_c(shortest_col) = 1;
    long long examined = 1;

    Enumerator e(co, /*skip_zero=*/true);
    e.run(best_sq, best_sq, best_c, examined);
    return finish(basis, Vector::Zero(basis.ambient_dim()), std::move(best_c), examined);
}

std::vector<double> successive_minima(const Basis& basis, int up_to, int enumeration_cap) {
    check_enumeration_inputs(basis, enumeration_cap);
    const Eigen::Index n = basis.rank();
    if (up_to < 1 || up_to > n)
        throw InvalidInputError("successive_minima: up_to must be in [1, n]");

    const GramSchmidtData gs = gram_schmidt(basis);
    const Coordinates co = make_coordinates(gs, Vector::Zero(basis.ambient_dim()));
    const double radius_sq =
        basis.matrix().colwise().squaredNorm().maxCoeff() * (1.0 + 1e-12);

    // Collect every nonzero lattice point with ||v||^2 <= radius_sq.
    struct Point {
        double norm_sq;
        IntVector c;
    };
    std::vector<Point> points;
    {
        struct Collector {
            const Coordinates& co;
            Eigen::Index n;
            double bound;
            std::vector<Point>& out;
            IntVector c;
            void descend(Eigen::Index level, double partial_sq) {
                double center = 0.0;
                for (Eigen::Index j = level + 1; j < n; ++j) center -= co.r(level, j) * c(j);
                center /= co.r(level, level);
                const std::int64_t c0 = std::llround(center);
                const int s = (center >= static_cast<double>(c0)) ? 1 : -1;
                for (std::int64_t k = 0;; ++k) {
                    const std::int64_t off = (k % 2 == 1) ? s * ((k + 1) / 2) : -s * (k / 2);
                    const std::int64_t cc = c0 + off;
                    const double d = co.r(level, level) * (center - static_cast<double>(cc));
                    const double acc = partial_sq + d * d;
                    if (acc > bound) break;
                    c(level) = cc;
                    if (level == 0) {
                        if (!c.isZero()) out.push_back({acc, c});
                    } else {
                        descend(level - 1, acc);
                    }
                }
            }
        };
        Collector col{co, n, radius_sq, points, IntVector::Zero(n)};
        col.descend(n - 1, 0.0);
    }

    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
        return std::lexicographical_compare(a.c.data(), a.c.data() + a.c.size(),
                                            b.c.data(), b.c.data() + b.c.size());
    });

    // Greedy independent selection; exact rank bookkeeping over rationals on
    // the integer coefficient vectors (B has full column rank, so independence
    // of the points equals independence of their coefficients). Rows are kept
    // in echelon form indexed by leading column.
    using Rational = boost::multiprecision::cpp_rational;
    std::vector<std::vector<Rational>> echelon(n);  // echelon[lead] or empty
    std::vector<double> minima;
    for (const Point& p : points) {
        if (static_cast<int>(minima.size()) == up_to) break;
        std::vector<Rational> row(n);
        for (Eigen::Index j = 0; j < n; ++j) row[j] = p.c(j);
        bool independent = false;
        for (Eigen::Index lead = 0; lead < n; ++lead) {
            if (row[lead] == 0) continue;
            if (echelon[lead].empty()) {
                echelon[lead] = std::move(row);
                independent = true;
                break;
            }
            const Rational f = row[lead] / echelon[lead][lead];
            for (Eigen::Index j = lead; j < n; ++j) row[j] -= f * echelon[lead][j];
        }
        if (independent) minima.push_back(std::sqrt(p.norm_sq));
    }
    if (static_cast<int>(minima.size()) < up_to)
        throw NumericalError("successive_minima: enumeration radius missed a minimum");
    return minima;
}

}  // namespace latred
