#pragma once

#include "latred/types.hpp"

#include <vector>

namespace latred {

/// Exact enumeration is refused above this rank unless the caller raises the
/// cap explicitly. SR-CVP experiments live far below it; large-n paths use
/// SR-Pair / SR-Hash instead.
inline constexpr int kDefaultEnumerationCap = 24;

struct CvpResult {
    Vector lattice_vector;        // s = B c
    IntVector coefficients;       // c
    double residual_norm_sq;      // ||target - s||^2
    long long candidates_examined = 0;  // lattice points evaluated
};

/// Babai's nearest-plane: round the target along the Gram-Schmidt planes from
/// the last column down. The residual r satisfies |<r, b*_i>| <= ||b*_i||^2 / 2.
CvpResult babai_nearest_plane(const GramSchmidtData& gs, const Basis& basis,
                              const Vector& target);

/// Exact closest lattice vector by depth-first enumeration over Gram-Schmidt
/// coordinates with radius pruning; the initial radius comes from Babai.
/// Rounding ties are resolved by the fixed zig-zag child order (first found).
CvpResult enumerate_cvp(const Basis& basis, const Vector& target,
                        int enumeration_cap = kDefaultEnumerationCap);

/// Nonzero lattice vector of minimal norm.
CvpResult shortest_vector(const Basis& basis, int enumeration_cap = kDefaultEnumerationCap);

/// First `up_to` successive minima: enumerate every lattice point of norm at
/// most l(B) (the n basis columns witness lambda_n <= l(B)), then greedily
/// take linearly independent representatives in order of increasing norm.
/// Independence is decided exactly on the integer coefficient vectors.
std::vector<double> successive_minima(const Basis& basis, int up_to,
                                      int enumeration_cap = kDefaultEnumerationCap);

}  // namespace latred
