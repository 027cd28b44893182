#include "latred/intmat.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <vector>

namespace latred {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Fraction-free Bareiss elimination; returns det(M) exactly.
BigInt determinant_exact(const IntMatrix& m) {
    const Eigen::Index n = m.rows();
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a[i][j] = m(i, j);

    int sign = 1;
    BigInt prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            Eigen::Index pivot = -1;
            for (Eigen::Index r = k + 1; r < n; ++r)
                if (a[r][k] != 0) { pivot = r; break; }
            if (pivot < 0) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

int determinant_sign_exact(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidInputError("determinant of non-square matrix");
    const BigInt d = determinant_exact(m);
    return d == 0 ? 0 : (d > 0 ? 1 : -1);
}

bool is_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const BigInt d = determinant_exact(m);
    return d == 1 || d == -1;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    using Rational = boost::multiprecision::cpp_rational;
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw InvalidInputError("inverse of non-square matrix");

    // Exact Gauss-Jordan over rationals on [M | I].
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a[i][j] = m(i, j);
        a[i][n + i] = 1;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = k; r < n; ++r)
            if (a[r][k] != 0) { pivot = r; break; }
        if (pivot < 0) throw InvalidInputError("unimodular_inverse: singular matrix");
        std::swap(a[k], a[pivot]);
        const Rational p = a[k][k];
        for (Eigen::Index j = k; j < 2 * n; ++j) a[k][j] /= p;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == k || a[r][k] == 0) continue;
            const Rational f = a[r][k];
            for (Eigen::Index j = k; j < 2 * n; ++j) a[r][j] -= f * a[k][j];
        }
    }

    IntMatrix inv(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Rational& v = a[i][n + j];
            if (boost::multiprecision::denominator(v) != 1)
                throw InvalidInputError("unimodular_inverse: matrix is not unimodular");
            const BigInt num = boost::multiprecision::numerator(v);
            if (num > std::numeric_limits<std::int64_t>::max() ||
                num < std::numeric_limits<std::int64_t>::min())
                throw InvalidInputError("unimodular_inverse: entry exceeds 64-bit range");
            inv(i, j) = static_cast<std::int64_t>(num);
        }
    }
    return inv;
}

}  // namespace latred
