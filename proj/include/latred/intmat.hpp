#pragma once

#include "latred/types.hpp"

namespace latred {

/// -1, 0 or +1: sign of det(M), decided in exact integer arithmetic
/// (fraction-free Bareiss elimination over arbitrary-precision integers).
int determinant_sign_exact(const IntMatrix& m);

/// True iff det(M) is exactly +1 or -1.
bool is_unimodular(const IntMatrix& m);

/// Exact inverse of a unimodular integer matrix. Throws InvalidInputError if
/// |det| != 1 or an entry of the inverse does not fit in 64 bits.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace latred
