#include "latred/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace latred {

GramSchmidtData gram_schmidt(const Basis& basis) {
    const Matrix& b = basis.matrix();
    const Eigen::Index m = b.rows(), n = b.cols();

    GramSchmidtData gs;
    gs.orthogonal_vectors.resize(m, n);
    gs.mu = Matrix::Identity(n, n);
    gs.norms_sq.resize(n);

    // Modified Gram-Schmidt: subtract projections one at a time. The
    // telescoped identity b_i = b*_i + sum_{j<i} mu_ij b*_j still holds.
    for (Eigen::Index i = 0; i < n; ++i) {
        Vector v = b.col(i);
        for (Eigen::Index j = 0; j < i; ++j) {
            const double mu_ij = v.dot(gs.orthogonal_vectors.col(j)) / gs.norms_sq(j);
            gs.mu(i, j) = mu_ij;
            v -= mu_ij * gs.orthogonal_vectors.col(j);
        }
        const double nsq = v.squaredNorm();
        const double col_nsq = b.col(i).squaredNorm();
        if (col_nsq == 0.0 || nsq < kRankTolerance * col_nsq)
            throw DegenerateBasisError("rank deficiency at column " + std::to_string(i) +
                                       ": ||b*||^2 = " + std::to_string(nsq));
        gs.orthogonal_vectors.col(i) = v;
        gs.norms_sq(i) = nsq;
    }
    return gs;
}

double orthogonality_defect(const Basis& basis) {
    // eta = prod ||b_i|| / prod ||b*_i||, in log space: heavily skewed bases
    // (duals of random channels) overflow a direct product.
    const GramSchmidtData gs = gram_schmidt(basis);
    double log_eta = 0.0;
    for (Eigen::Index i = 0; i < basis.rank(); ++i)
        log_eta += 0.5 * (std::log(basis.matrix().col(i).squaredNorm()) - std::log(gs.norms_sq(i)));
    return std::exp(log_eta);
}

QualityMetrics quality_metrics(const Basis& basis) {
    QualityMetrics q;
    q.column_norms = basis.matrix().colwise().norm();
    q.basis_length = q.column_norms.maxCoeff();
    q.od = orthogonality_defect(basis);
    return q;
}

Basis dual_basis(const Basis& basis) {
    const Matrix& b = basis.matrix();
    const Eigen::Index n = b.cols();
    Matrix dual;
    if (b.rows() == n) {
        dual = b.partialPivLu().inverse().transpose();
    } else {
        const Matrix gram = b.transpose() * b;
        dual = gram.ldlt().solve(b.transpose()).transpose();
    }
    const double residual = (dual.transpose() * b - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!dual.allFinite() || residual > 1e-6) {
        // Condition estimate only on the error path; SVD is too slow for the
        // per-trial fast path.
        Eigen::JacobiSVD<Matrix> svd(b);
        const double cond = svd.singularValues()(0) /
                            svd.singularValues()(svd.singularValues().size() - 1);
        std::ostringstream msg;
        msg << "dual basis inaccurate: ||D^T B - I||_max = " << residual
            << ", cond(B) ~ " << cond;
        throw NumericalError(msg.str());
    }
    return Basis(std::move(dual));
}

Matrix pairwise_angles(const Basis& basis) {
    const Matrix& b = basis.matrix();
    const Eigen::Index n = b.cols();
    const Vector norms = b.colwise().norm();
    for (Eigen::Index i = 0; i < n; ++i)
        if (norms(i) == 0.0)
            throw InvalidInputError("pairwise_angles: zero column " + std::to_string(i));

    Matrix angles = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double c = std::abs(b.col(i).dot(b.col(j))) / (norms(i) * norms(j));
            c = std::min(c, 1.0);
            angles(i, j) = angles(j, i) = std::acos(c);
        }
    }
    return angles;
}

std::pair<Basis, UnimodularTransform> apply_update(const Basis& basis,
                                                   const UnimodularTransform& transform,
                                                   Eigen::Index target_index,
                                                   const IntVector& coefficients) {
    const Eigen::Index n = basis.rank();
    if (coefficients.size() != n)
        throw InvalidInputError("apply_update: coefficient vector has wrong length");
    if (target_index < 0 || target_index >= n)
        throw InvalidInputError("apply_update: target index out of range");
    if (coefficients(target_index) != 0)
        throw InvalidInputError("apply_update: coefficient at target index must be zero");
    if (transform.size() != n)
        throw InvalidInputError("apply_update: transform size mismatch");

    Matrix cols = basis.matrix();
    cols.col(target_index) -= cols * coefficients.cast<double>();

    IntMatrix u = transform.matrix();
    u.col(target_index) -= u * coefficients;

    return {Basis(std::move(cols)), UnimodularTransform(std::move(u))};
}

Basis read_basis_text(std::istream& in) {
    auto next_data_line = [&in](std::string& line) -> bool {
        while (std::getline(in, line)) {
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            return true;
        }
        return false;
    };

    std::string line;
    if (!next_data_line(line)) throw InvalidInputError("basis file: missing header line");
    Eigen::Index m = 0, n = 0;
    {
        std::istringstream hdr(line);
        if (!(hdr >> m >> n) || m <= 0 || n <= 0)
            throw InvalidInputError("basis file: header must be 'm n' with positive dims");
    }
    Matrix b(m, n);
    for (Eigen::Index r = 0; r < m; ++r) {
        if (!next_data_line(line))
            throw InvalidInputError("basis file: expected " + std::to_string(m) + " rows");
        std::istringstream row(line);
        for (Eigen::Index c = 0; c < n; ++c) {
            if (!(row >> b(r, c)))
                throw InvalidInputError("basis file: row " + std::to_string(r) +
                                        " needs " + std::to_string(n) + " values");
        }
    }
    return Basis(std::move(b));
}

Basis read_basis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open basis file: " + path);
    return read_basis_text(in);
}

void write_basis_text(std::ostream& out, const Basis& basis) {
    const Matrix& b = basis.matrix();
    out << b.rows() << " " << b.cols() << "\n";
    const Eigen::IOFormat fmt(17, Eigen::DontAlignCols, " ", "\n");
    out << b.format(fmt) << "\n";
}

void write_basis_file(const std::string& path, const Basis& basis,
                      const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open output file: " + path);
    if (!header_comment.empty()) {
        std::istringstream lines(header_comment);
        std::string l;
        while (std::getline(lines, l)) out << "# " << l << "\n";
    }
    write_basis_text(out, basis);
}

}  // namespace latred
