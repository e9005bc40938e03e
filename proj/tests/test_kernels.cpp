#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "feq/errors.hpp"
#include "feq/kernels.hpp"

using namespace feq;
using namespace feq::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

// Plain Sturm recurrence, written independently of the library kernels.
int reference_count(const std::vector<double>& d, const std::vector<double>& e2, double shift,
                    double pivmin) {
    int count = 0;
    double q = d[0] - shift;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = (d[i] - shift) - e2[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
    }
    return count;
}

std::vector<const KernelTable*> variants() {
    std::vector<const KernelTable*> out{&scalar_table()};
#if defined(FEQ_HAVE_AVX2)
    if (available(SimdLevel::Avx2)) out.push_back(&avx2_table());
#endif
    return out;
}

}  // namespace

TEST_CASE("scalar level is always available") {
    CHECK(available(SimdLevel::Scalar));
    CHECK(parse_level("scalar") == SimdLevel::Scalar);
    CHECK(name(SimdLevel::Scalar) == "scalar");
    CHECK(name(SimdLevel::Avx2) == "avx2");
    CHECK_THROWS_AS(parse_level("sse9"), ValidationError);
    const auto best = parse_level("auto");
    CHECK(available(best));
}

TEST_CASE("set_active_level switches dispatch") {
    const auto saved = active_level();
    set_active_level(SimdLevel::Scalar);
    CHECK(active_level() == SimdLevel::Scalar);
    if (available(SimdLevel::Avx2)) {
        set_active_level(SimdLevel::Avx2);
        CHECK(active_level() == SimdLevel::Avx2);
    } else {
        CHECK_THROWS_AS(set_active_level(SimdLevel::Avx2), ValidationError);
    }
    set_active_level(saved);
}

TEST_CASE("sturm counts: every variant matches the reference recurrence") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 1199u}) {
        const auto d = random_vector(rng, n, -3.0, 3.0);
        auto e = random_vector(rng, n > 1 ? n - 1 : 0, -1.0, 1.0);
        std::vector<double> e2(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) e2[i] = e[i] * e[i];
        for (std::size_t ns : {1u, 3u, 4u, 5u, 9u}) {
            const auto shifts = random_vector(rng, ns, -5.0, 5.0);
            const double pivmin = 1e-300;
            std::vector<int> expect(ns);
            for (std::size_t s = 0; s < ns; ++s) expect[s] = reference_count(d, e2, shifts[s], pivmin);
            for (const auto* t : variants()) {
                std::vector<int> got(ns, -1);
                t->sturm_counts(d.data(), e2.data(), n, shifts.data(), ns, pivmin, got.data());
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("sturm counts are monotone in the shift") {
    std::mt19937_64 rng(11);
    const std::size_t n = 300;
    const auto d = random_vector(rng, n, -2.0, 2.0);
    const auto e = random_vector(rng, n - 1, 0.1, 1.0);
    std::vector<double> e2(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = e[i] * e[i];
    std::vector<double> shifts;
    for (int i = 0; i <= 200; ++i) shifts.push_back(-5.0 + 0.05 * i);
    std::vector<int> counts(shifts.size());
    sturm_counts(d, e2, shifts, counts, 1e-300);
    CHECK(counts.front() == 0);
    CHECK(counts.back() == static_cast<int>(n));
    for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] >= counts[i - 1]);
}

TEST_CASE("dot products: variants agree to rounding") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {0u, 1u, 5u, 8u, 13u, 1000u, 1201u}) {
        const auto a = random_vector(rng, n, -1.0, 1.0);
        const auto b = random_vector(rng, n, -1.0, 1.0);
        const auto w = random_vector(rng, n, 0.0, 100.0);
        long double ref = 0.0L, wref = 0.0L, abs_sum = 0.0L, wabs = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            ref += static_cast<long double>(a[i]) * b[i];
            wref += static_cast<long double>(a[i]) * w[i] * b[i];
            abs_sum += std::abs(static_cast<long double>(a[i]) * b[i]);
            wabs += std::abs(static_cast<long double>(a[i]) * w[i] * b[i]);
        }
        for (const auto* t : variants()) {
            const double tol = 4.0 * static_cast<double>(n + 1) * 1.1e-16;
            CHECK(std::abs(t->dot(a.data(), b.data(), n) - static_cast<double>(ref)) <=
                  tol * static_cast<double>(abs_sum) + 1e-300);
            CHECK(std::abs(t->weighted_dot(a.data(), w.data(), b.data(), n) - static_cast<double>(wref)) <=
                  tol * static_cast<double>(wabs) + 1e-300);
        }
    }
}

TEST_CASE("image potential: variants are bit-identical to the scalar reference") {
    std::mt19937_64 rng(5);
    const ImagePotentialCoeffs c{1.3e-30, 1e-10, 8e-16, 1.6e-19};
    for (std::size_t n : {1u, 4u, 7u, 1201u}) {
        auto z = random_vector(rng, n, -2e-8, 1e-7);
        if (n > 2) z[1] = 0.0;
        std::vector<double> expect(n), got(n);
        scalar_table().image_potential(z.data(), expect.data(), n, c);
        for (std::size_t i = 0; i < n; ++i) {
            const double closed = z[i] <= 0.0 ? c.barrier : c.field * z[i] - c.coulomb / (z[i] + c.offset);
            CHECK(expect[i] == closed);
        }
        for (const auto* t : variants()) {
            t->image_potential(z.data(), got.data(), n, c);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("span front ends check sizes") {
    std::vector<double> a(4), b(5), out(3);
    CHECK_THROWS_AS(dot(a, b), ValidationError);
    CHECK_THROWS_AS(weighted_dot(a, a, b), ValidationError);
    CHECK_THROWS_AS(image_potential(a, out, ImagePotentialCoeffs{1, 1, 1, 1}), ValidationError);
    std::vector<double> d(4), e2(2), shifts(2);
    std::vector<int> counts(2);
    CHECK_THROWS_AS(sturm_counts(d, e2, shifts, counts, 1e-300), ValidationError);
}
