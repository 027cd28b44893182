#pragma once

#include "latred/types.hpp"

#include <iosfwd>
#include <string>
#include <utility>

namespace latred {

/// Classical Gram-Schmidt of the basis columns.
/// Throws DegenerateBasisError if some ||b*_i||^2 falls below
/// kRankTolerance^2 * ||b_i||^2 (rank deficiency at working precision).
GramSchmidtData gram_schmidt(const Basis& basis);

/// Orthogonality defect eta(B) = prod ||b_i|| / sqrt(det(B^T B)) >= 1.
/// Evaluated in log space so strongly skewed bases do not overflow.
double orthogonality_defect(const Basis& basis);

/// Quality summary: defect, max column norm, all column norms.
QualityMetrics quality_metrics(const Basis& basis);

/// Dual basis D with D^T B = I. For square B this is B^{-T}; for tall B,
/// B (B^T B)^{-1}. Throws NumericalError with a condition estimate when the
/// Gram matrix is too ill-conditioned to invert reliably.
Basis dual_basis(const Basis& basis);

/// Symmetric matrix of angles theta_ij = arccos(|<b_i,b_j>| / (||b_i|| ||b_j||))
/// in [0, pi/2]; diagonal is 0. Throws InvalidInputError on a zero column.
Matrix pairwise_angles(const Basis& basis);

/// One sequential-reduction column update: replace column `target_index` by
/// b_i - sum_k coefficients[k] * b_k and right-multiply `transform` by the
/// corresponding elementary unimodular matrix. coefficients[target_index]
/// must be zero.
std::pair<Basis, UnimodularTransform> apply_update(const Basis& basis,
                                                   const UnimodularTransform& transform,
                                                   Eigen::Index target_index,
                                                   const IntVector& coefficients);

/// Text format: first line "m n", then m rows of n decimal floats.
/// Lines starting with '#' are comments.
Basis read_basis_text(std::istream& in);
Basis read_basis_file(const std::string& path);
void write_basis_text(std::ostream& out, const Basis& basis);
void write_basis_file(const std::string& path, const Basis& basis,
                      const std::string& header_comment = "");

}  // namespace latred
