#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace feq {

struct TridiagonalEigenpairs {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // unit 2-norm, one per value
};

/// k lowest eigenpairs of the real symmetric tridiagonal matrix with
/// diagonal `diag` (n) and off-diagonal `offdiag` (n-1).
///
/// Eigenvalues come from Sturm-count multisection (four shifts per sweep, so
/// the SIMD Sturm kernel is used when available) to full double precision;
/// eigenvectors from inverse iteration with partial-pivoting LU and
/// Gram-Schmidt against the lower vectors. Deterministic. Throws
/// ValidationError for bad sizes / k and NumericalError if an eigenvector
/// fails its residual check.
TridiagonalEigenpairs lowest_eigenpairs(std::span<const double> diag,
                                        std::span<const double> offdiag, std::size_t k);

/// Sturm count: number of eigenvalues strictly below `shift`.
int eigenvalue_count_below(std::span<const double> diag, std::span<const double> offdiag,
                           double shift);

}  // namespace feq
