#pragma once

#include "bandlab/lattice.hpp"

namespace bandlab {

/// all singular values, descending
RealVector singular_values(const Matrix& m);

double smallest_singular_value(const Matrix& m);
double largest_singular_value(const Matrix& m);

/// induced operator norm of a dense matrix acting between scalar l^p spaces:
/// p=1 max abs column sum, p=2 largest singular value, p=inf max abs row sum
double operator_norm(const Matrix& m, NormTag t);

}  // namespace bandlab
