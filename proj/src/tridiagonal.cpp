#include "feq/tridiagonal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "feq/errors.hpp"
#include "feq/kernels.hpp"

namespace feq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Bounds {
    double lo;
    double hi;
    double norm;
};

Bounds gershgorin(std::span<const double> diag, std::span<const double> offdiag) {
    const std::size_t n = diag.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double radius = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                              (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
        lo = std::min(lo, diag[i] - radius);
        hi = std::max(hi, diag[i] + radius);
    }
    const double norm = std::max(std::abs(lo), std::abs(hi));
    const double pad = 2.0 * kEps * norm + std::numeric_limits<double>::min();
    return {lo - pad, hi + pad, norm};
}

// Multisection on Sturm counts: four interior shifts per sweep.
double bisect_eigenvalue(std::span<const double> diag, std::span<const double> offdiag_sq,
                         std::size_t index, Bounds bounds, double pivmin) {
    double lo = bounds.lo;
    double hi = bounds.hi;
    std::array<double, 4> shifts{};
    std::array<int, 4> counts{};
    const int target = static_cast<int>(index) + 1;
    for (int sweep = 0; sweep < 200; ++sweep) {
        const double width = hi - lo;
        const double tol = 4.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin;
        if (width <= tol) break;
        for (std::size_t m = 0; m < shifts.size(); ++m)
            shifts[m] = lo + width * static_cast<double>(m + 1) / 5.0;
        kernels::sturm_counts(diag, offdiag_sq, shifts, counts, pivmin);
        double new_lo = lo;
        double new_hi = hi;
        for (std::size_t m = 0; m < shifts.size(); ++m) {
            if (counts[m] >= target) {
                new_hi = shifts[m];
                break;
            }
            new_lo = shifts[m];
        }
        if (new_lo == lo && new_hi == hi) break;  // no representable progress
        lo = new_lo;
        hi = new_hi;
    }
    return 0.5 * (lo + hi);
}

// Partial-pivoting LU of a tridiagonal matrix (LAPACK dgttrf layout).
struct TridiagonalLU {
    std::vector<double> dl, d, du, du2;
    std::vector<char> swapped;

    TridiagonalLU(std::span<const double> diag, std::span<const double> offdiag, double shift,
                  double tiny_pivot) {
        const std::size_t n = diag.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
        dl.assign(offdiag.begin(), offdiag.end());
        du.assign(offdiag.begin(), offdiag.end());
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 0 ? n - 1 : 0, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) d[i] = tiny_pivot;
                const double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = 1;
            }
        }
        if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny_pivot;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        if (n >= 3)
            for (std::size_t i = n - 2; i-- > 0;)
                b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
};

double normalize(std::vector<double>& v) {
    const double norm = std::sqrt(kernels::dot(v, v));
    if (!(norm > 0.0) || !std::isfinite(norm)) return norm;
    for (double& x : v) x /= norm;
    return norm;
}

double residual_norm(std::span<const double> diag, std::span<const double> offdiag,
                     const std::vector<double>& x, double lambda) {
    const std::size_t n = diag.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (diag[i] - lambda) * x[i];
        if (i > 0) r += offdiag[i - 1] * x[i - 1];
        if (i + 1 < n) r += offdiag[i] * x[i + 1];
        sum += r * r;
    }
    return std::sqrt(sum);
}

void fix_sign(std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    for (double x : v) {
        if (std::abs(x) > 1e-3 * peak) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

}  // namespace

int eigenvalue_count_below(std::span<const double> diag, std::span<const double> offdiag,
                           double shift) {
    if (diag.empty() || offdiag.size() + 1 != diag.size())
        throw ValidationError("eigenvalue_count_below: inconsistent sizes");
    std::vector<double> e2(offdiag.size());
    double max_e2 = 1.0;
    for (std::size_t i = 0; i < offdiag.size(); ++i) {
        e2[i] = offdiag[i] * offdiag[i];
        max_e2 = std::max(max_e2, e2[i]);
    }
    const double pivmin = std::numeric_limits<double>::min() * max_e2;
    int count = 0;
    const std::array<double, 1> shifts{shift};
    kernels::sturm_counts(diag, e2, shifts, std::span<int>(&count, 1), pivmin);
    return count;
}

TridiagonalEigenpairs lowest_eigenpairs(std::span<const double> diag,
                                        std::span<const double> offdiag, std::size_t k) {
    const std::size_t n = diag.size();
    if (n == 0 || offdiag.size() + 1 != n)
        throw ValidationError("lowest_eigenpairs: inconsistent diagonal/off-diagonal sizes");
    if (k == 0 || k > n) throw ValidationError("lowest_eigenpairs: k out of range");
    auto finite = [](double x) { return std::isfinite(x); };
    if (!std::all_of(diag.begin(), diag.end(), finite) ||
        !std::all_of(offdiag.begin(), offdiag.end(), finite))
        throw ValidationError("lowest_eigenpairs: non-finite matrix entry");

    std::vector<double> e2(n - 1);
    double max_e2 = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e2[i] = offdiag[i] * offdiag[i];
        max_e2 = std::max(max_e2, e2[i]);
    }
    const double pivmin = std::numeric_limits<double>::min() * max_e2;
    const Bounds bounds = gershgorin(diag, offdiag);

    TridiagonalEigenpairs out;
    out.values.reserve(k);
    for (std::size_t j = 0; j < k; ++j)
        out.values.push_back(bisect_eigenvalue(diag, e2, j, bounds, pivmin));

    const double tiny_pivot = kEps * std::max(bounds.norm, std::numeric_limits<double>::min());
    const double accept = 1e-10 * std::max(bounds.norm, 1.0);
    out.vectors.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double lambda = out.values[j];
        const TridiagonalLU lu(diag, offdiag, lambda, tiny_pivot);
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = 1.0 + 0.5 * static_cast<double>((i * 2654435761u + j * 40503u) % 1000u) / 1000.0;
        normalize(x);
        double residual = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 8; ++iter) {
            lu.solve(x);
            for (const auto& prev : out.vectors) {
                const double overlap = kernels::dot(prev, x);
                for (std::size_t i = 0; i < n; ++i) x[i] -= overlap * prev[i];
            }
            const double norm = normalize(x);
            if (!(norm > 0.0) || !std::isfinite(norm))
                throw NumericalError("lowest_eigenpairs: inverse iteration broke down");
            residual = residual_norm(diag, offdiag, x, lambda);
            if (iter >= 1 && residual <= accept) break;
        }
        if (!(residual <= accept))
            throw NumericalError("lowest_eigenpairs: eigenvector " + std::to_string(j) +
                                 " did not converge (residual " + std::to_string(residual) + ")");
        fix_sign(x);
        out.vectors.push_back(std::move(x));
    }
    return out;
}

}  // namespace feq
