#include <cmath>

#include "feq/kernels.hpp"

namespace feq::kernels {

namespace {

void sturm_counts_scalar(const double* diag, const double* offdiag_sq, std::size_t n,
                         const double* shifts, std::size_t n_shifts, double pivmin, int* counts) {
    for (std::size_t s = 0; s < n_shifts; ++s) {
        const double sigma = shifts[s];
        int count = 0;
        double q = diag[0] - sigma;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
        for (std::size_t i = 1; i < n; ++i) {
            q = (diag[i] - sigma) - offdiag_sq[i - 1] / q;
            if (std::abs(q) < pivmin) q = -pivmin;
            if (q < 0.0) ++count;
        }
        counts[s] = count;
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

double weighted_dot_scalar(const double* a, const double* w, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += (a[i] * w[i]) * b[i];
    return sum;
}

void image_potential_scalar(const double* z, double* out, std::size_t n,
                            const ImagePotentialCoeffs& c) {
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = z[i];
        out[i] = zi <= 0.0 ? c.barrier : (c.field * zi - c.coulomb / (zi + c.offset));
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{sturm_counts_scalar, dot_scalar, weighted_dot_scalar,
                               image_potential_scalar};
    return t;
}

}  // namespace feq::kernels
