#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latred {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input fails a shape or value precondition.
struct InvalidInputError : Error {
    using Error::Error;
};

/// Basis is (numerically) rank deficient.
struct DegenerateBasisError : Error {
    using Error::Error;
};

/// A computation could not be carried out at the required accuracy.
struct NumericalError : Error {
    using Error::Error;
};

// ||b*_i||^2 below kRankTolerance * ||b_i||^2 marks the basis as rank
// deficient. Scale invariant.
inline constexpr double kRankTolerance = 1e-12;

/// Lattice basis: m x n real matrix of column vectors, m >= n.
/// Column order is significant; index i is the identity of b_i across
/// reduction updates.
class Basis {
  public:
    explicit Basis(Matrix columns) : cols_(std::move(columns)) {
        if (cols_.rows() == 0 || cols_.cols() == 0)
            throw InvalidInputError("basis must be nonempty");
        if (cols_.rows() < cols_.cols())
            throw InvalidInputError("basis must have m >= n (tall or square)");
        if (!cols_.allFinite())
            throw InvalidInputError("basis entries must be finite");
    }

    Eigen::Index ambient_dim() const { return cols_.rows(); }  // m
    Eigen::Index rank() const { return cols_.cols(); }         // n

    const Matrix& matrix() const { return cols_; }
    Vector column(Eigen::Index i) const { return cols_.col(i); }

    bool operator==(const Basis& other) const { return cols_ == other.cols_; }

  private:
    Matrix cols_;
};

/// Integer change-of-basis matrix with determinant +1 or -1.
/// Determinant is validated in exact integer arithmetic (see intmat.hpp);
/// the class itself only stores the entries.
class UnimodularTransform {
  public:
    explicit UnimodularTransform(IntMatrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
            throw InvalidInputError("unimodular transform must be square and nonempty");
    }

    static UnimodularTransform identity(Eigen::Index n) {
        return UnimodularTransform(IntMatrix::Identity(n, n));
    }

    Eigen::Index size() const { return entries_.rows(); }
    const IntMatrix& matrix() const { return entries_; }

    /// Entries as doubles, for applying to a real basis.
    Matrix as_real() const { return entries_.cast<double>(); }

  private:
    IntMatrix entries_;
};

/// Gram-Schmidt data of a basis: B = B* mu^T with mu unit lower triangular.
struct GramSchmidtData {
    Matrix orthogonal_vectors;  // columns b*_i
    Matrix mu;                  // lower triangular, unit diagonal
    Vector norms_sq;            // ||b*_i||^2
};

/// Basis quality summary.
struct QualityMetrics {
    double od;                   // orthogonality defect, >= 1
    double basis_length;         // l(B) = max_i ||b_i||
    Vector column_norms;
};

}  // namespace latred
