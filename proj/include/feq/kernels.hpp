#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// SIMD variants selected at runtime. All variants implement the same
// arithmetic; equivalence is covered by tests/test_kernels.cpp.

#include <cstddef>
#include <span>
#include <string_view>

namespace feq::kernels {

enum class SimdLevel { Scalar, Avx2 };

/// Coefficients of the sampled surface potential
///   V(z) = barrier                       for z <= 0
///   V(z) = -coulomb / (z + offset) + field * z   for z > 0
/// with `coulomb` = e^2 Lambda / (16 pi eps0) and `field` = e E_perp.
struct ImagePotentialCoeffs {
    double coulomb;
    double offset;
    double field;
    double barrier;
};

struct KernelTable {
    /// counts[s] = number of eigenvalues of the symmetric tridiagonal matrix
    /// (diag, offdiag_sq = squared off-diagonal, length n-1) below shifts[s].
    void (*sturm_counts)(const double* diag, const double* offdiag_sq, std::size_t n,
                         const double* shifts, std::size_t n_shifts, double pivmin, int* counts);
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// sum_i a[i] w[i] b[i]
    double (*weighted_dot)(const double* a, const double* w, const double* b, std::size_t n);
    void (*image_potential)(const double* z, double* out, std::size_t n,
                            const ImagePotentialCoeffs& c);
};

const KernelTable& scalar_table();
#if defined(FEQ_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

/// Whether the variant was compiled in and the running CPU supports it.
bool available(SimdLevel level) noexcept;

/// Best available level unless overridden by FEQ_SIMD=scalar|avx2|auto or
/// set_active_level().
SimdLevel active_level() noexcept;

/// Throws ValidationError if the level is not available.
void set_active_level(SimdLevel level);

const KernelTable& table(SimdLevel level);

std::string_view name(SimdLevel level) noexcept;
/// "scalar", "avx2" or "auto" (best available).
SimdLevel parse_level(std::string_view text);

// Span front ends dispatching through active_level().

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin);
double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> a, std::span<const double> w,
                    std::span<const double> b);
void image_potential(std::span<const double> z, std::span<double> out,
                     const ImagePotentialCoeffs& c);

}  // namespace feq::kernels
