#include "doctest.h"
#include "approx.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "feq/errors.hpp"
#include "feq/kernels.hpp"
#include "feq/tridiagonal.hpp"

using namespace feq;

namespace {

struct Case {
    std::vector<double> d, e;
};

Case random_case(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dd(-4.0, 4.0), de(-1.5, 1.5);
    Case c{std::vector<double>(n), std::vector<double>(n - 1)};
    for (auto& x : c.d) x = dd(rng);
    for (auto& x : c.e) x = de(rng);
    return c;
}

Eigen::VectorXd oracle_values(const Case& c) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(c.d.data(), c.d.size());
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(c.e.data(), c.e.size());
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double residual(const Case& c, double lambda, const std::vector<double>& v) {
    double worst = 0.0;
    const std::size_t n = c.d.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = (c.d[i] - lambda) * v[i];
        if (i > 0) r += c.e[i - 1] * v[i - 1];
        if (i + 1 < n) r += c.e[i] * v[i + 1];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

}  // namespace

TEST_CASE("discrete Laplacian has the closed-form spectrum") {
    const std::size_t n = 500;
    const std::vector<double> d(n, 2.0), e(n - 1, -1.0);
    const auto pairs = lowest_eigenpairs(d, e, 10);
    for (std::size_t k = 0; k < 10; ++k) {
        const double exact = 2.0 - 2.0 * std::cos(static_cast<double>(k + 1) * std::numbers::pi /
                                                  static_cast<double>(n + 1));
        CHECK(std::abs(pairs.values[k] - exact) <= 8 * 2.2e-16 * 4.0);
        // eigenvector sin(j (k+1) pi / (n+1)), normalized
        double dotv = 0.0;
        const double norm = std::sqrt(2.0 / static_cast<double>(n + 1));
        for (std::size_t j = 0; j < n; ++j)
            dotv += pairs.vectors[k][j] * norm *
                    std::sin(static_cast<double>((j + 1) * (k + 1)) * std::numbers::pi / static_cast<double>(n + 1));
        CHECK(std::abs(dotv) == approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("random tridiagonals agree with a dense QL oracle") {
    std::mt19937_64 rng(42);
    for (std::size_t n : {10u, 57u, 300u, 1199u}) {
        const auto c = random_case(rng, n);
        const auto ref = oracle_values(c);
        const std::size_t k = std::min<std::size_t>(n, 8);
        const auto pairs = lowest_eigenpairs(c.d, c.e, k);
        REQUIRE(pairs.values.size() == k);
        double scale = 0.0;
        for (double x : c.d) scale = std::max(scale, std::abs(x));
        for (std::size_t j = 0; j < k; ++j) {
            CHECK(std::abs(pairs.values[j] - ref[static_cast<Eigen::Index>(j)]) < 1e-12 * (scale + 3.0));
            CHECK(residual(c, pairs.values[j], pairs.vectors[j]) < 1e-9);
        }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += pairs.vectors[a][i] * pairs.vectors[b][i];
                CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-9);
            }
    }
}

TEST_CASE("eigenvalues ascend and counts match") {
    std::mt19937_64 rng(9);
    const auto c = random_case(rng, 200);
    const auto pairs = lowest_eigenpairs(c.d, c.e, 12);
    for (std::size_t j = 1; j < pairs.values.size(); ++j) CHECK(pairs.values[j] >= pairs.values[j - 1]);
    for (std::size_t j = 0; j + 1 < pairs.values.size(); ++j) {
        const double mid = 0.5 * (pairs.values[j] + pairs.values[j + 1]);
        if (pairs.values[j + 1] - pairs.values[j] > 1e-9)
            CHECK(eigenvalue_count_below(c.d, c.e, mid) == static_cast<int>(j + 1));
    }
}

TEST_CASE("result does not depend on the SIMD level") {
    std::mt19937_64 rng(13);
    const auto c = random_case(rng, 800);
    const auto saved = kernels::active_level();
    kernels::set_active_level(kernels::SimdLevel::Scalar);
    const auto scalar = lowest_eigenpairs(c.d, c.e, 6);
    if (kernels::available(kernels::SimdLevel::Avx2)) {
        kernels::set_active_level(kernels::SimdLevel::Avx2);
        const auto simd = lowest_eigenpairs(c.d, c.e, 6);
        CHECK(simd.values == scalar.values);
        for (std::size_t j = 0; j < 6; ++j)
            for (std::size_t i = 0; i < c.d.size(); ++i)
                CHECK(std::abs(simd.vectors[j][i] - scalar.vectors[j][i]) < 1e-12);
    }
    kernels::set_active_level(saved);
}

TEST_CASE("deterministic sign convention") {
    std::mt19937_64 rng(1);
    const auto c = random_case(rng, 100);
    const auto a = lowest_eigenpairs(c.d, c.e, 4);
    const auto b = lowest_eigenpairs(c.d, c.e, 4);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);
    for (const auto& v : a.vectors) {
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, std::abs(x));
        for (double x : v)
            if (std::abs(x) > 1e-3 * peak) {
                CHECK(x > 0.0);
                break;
            }
    }
}

TEST_CASE("input validation") {
    const std::vector<double> d(5, 1.0), e(3, 0.5), e_ok(4, 0.5);
    CHECK_THROWS_AS(lowest_eigenpairs(d, e, 2), ValidationError);
    CHECK_THROWS_AS(lowest_eigenpairs(d, e_ok, 0), ValidationError);
    CHECK_THROWS_AS(lowest_eigenpairs(d, e_ok, 6), ValidationError);
    std::vector<double> bad = d;
    bad[2] = std::nan("");
    CHECK_THROWS(lowest_eigenpairs(bad, e_ok, 2));
}
