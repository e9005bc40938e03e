#include <atomic>
#include <cstdlib>
#include <string>

#include "feq/errors.hpp"
#include "feq/kernels.hpp"

namespace feq::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(FEQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

SimdLevel best_available() noexcept {
    return cpu_has_avx2() ? SimdLevel::Avx2 : SimdLevel::Scalar;
}

SimdLevel initial_level() noexcept {
    if (const char* env = std::getenv("FEQ_SIMD")) {
        try {
            const SimdLevel requested = parse_level(env);
            if (available(requested)) return requested;
        } catch (const ValidationError&) {
        }
    }
    return best_available();
}

std::atomic<SimdLevel>& level_slot() {
    static std::atomic<SimdLevel> slot{initial_level()};
    return slot;
}

void check_sizes(bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("kernels: size mismatch in ") + what);
}

}  // namespace

bool available(SimdLevel level) noexcept {
    switch (level) {
        case SimdLevel::Scalar: return true;
        case SimdLevel::Avx2: return cpu_has_avx2();
    }
    return false;
}

SimdLevel active_level() noexcept { return level_slot().load(std::memory_order_relaxed); }

void set_active_level(SimdLevel level) {
    if (!available(level))
        throw ValidationError("SIMD level '" + std::string(name(level)) + "' is not available");
    level_slot().store(level, std::memory_order_relaxed);
}

const KernelTable& table(SimdLevel level) {
    if (!available(level))
        throw ValidationError("SIMD level '" + std::string(name(level)) + "' is not available");
#if defined(FEQ_HAVE_AVX2)
    if (level == SimdLevel::Avx2) return avx2_table();
#endif
    return scalar_table();
}

std::string_view name(SimdLevel level) noexcept {
    return level == SimdLevel::Avx2 ? "avx2" : "scalar";
}

SimdLevel parse_level(std::string_view text) {
    if (text == "scalar") return SimdLevel::Scalar;
    if (text == "avx2") return SimdLevel::Avx2;
    if (text == "auto") return best_available();
    throw ValidationError("unknown SIMD level '" + std::string(text) + "'");
}

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin) {
    check_sizes(!diag.empty() && offdiag_sq.size() + 1 == diag.size(), "sturm_counts");
    check_sizes(shifts.size() == counts.size(), "sturm_counts");
    table(active_level())
        .sturm_counts(diag.data(), offdiag_sq.data(), diag.size(), shifts.data(), shifts.size(),
                      pivmin, counts.data());
}

double dot(std::span<const double> a, std::span<const double> b) {
    check_sizes(a.size() == b.size(), "dot");
    return table(active_level()).dot(a.data(), b.data(), a.size());
}

double weighted_dot(std::span<const double> a, std::span<const double> w,
                    std::span<const double> b) {
    check_sizes(a.size() == w.size() && a.size() == b.size(), "weighted_dot");
    return table(active_level()).weighted_dot(a.data(), w.data(), b.data(), a.size());
}

void image_potential(std::span<const double> z, std::span<double> out,
                     const ImagePotentialCoeffs& c) {
    check_sizes(z.size() == out.size(), "image_potential");
    table(active_level()).image_potential(z.data(), out.data(), z.size(), c);
}

}  // namespace feq::kernels
