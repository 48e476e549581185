#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "siri/simd.hpp"

using namespace siri;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo,
                               double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

bool close(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 31, 33, 200, 201};

}  // namespace

TEST_CASE("scalar dot and dot_rev agree with a plain loop") {
    std::mt19937_64 rng(101);
    const simd::Ops& sc = simd::scalar_ops();
    for (std::size_t n : kSizes) {
        const auto a = random_vec(rng, n, -2.0, 2.0);
        const auto b = random_vec(rng, n, -2.0, 2.0);
        double want = 0.0;
        for (std::size_t k = 0; k < n; ++k) want += a[k] * b[k];
        CHECK(sc.dot(a.data(), b.data(), n) == doctest::Approx(want).epsilon(1e-13));

        // dot_rev pairs a[k] with b walked backwards from its last element.
        double want_rev = 0.0;
        for (std::size_t k = 0; k < n; ++k) want_rev += a[k] * b[n - 1 - k];
        if (n > 0)
            CHECK(sc.dot_rev(a.data(), b.data() + (n - 1), n) ==
                  doctest::Approx(want_rev).epsilon(1e-13));
        else
            CHECK(sc.dot_rev(a.data(), b.data(), 0) == 0.0);
    }
}

TEST_CASE("scalar saturated_sum matches the definition and degenerates at alpha 0") {
    std::mt19937_64 rng(102);
    const simd::Ops& sc = simd::scalar_ops();
    for (std::size_t n : kSizes) {
        const auto w = random_vec(rng, n, 0.0, 1.0);
        const auto x = random_vec(rng, n, 0.0, 50.0);
        for (double alpha : {0.0, 0.02, 0.7}) {
            double want = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                want += w[k] * x[k] / (1.0 + alpha * x[k]);
            CHECK(sc.saturated_sum(w.data(), x.data(), alpha, n) ==
                  doctest::Approx(want).epsilon(1e-13));
        }
        CHECK(sc.saturated_sum(w.data(), x.data(), 0.0, n) ==
              sc.dot(w.data(), x.data(), n));
    }
}

TEST_CASE("hermite midpoints reproduce cubic segments") {
    // y(t) = t^3 - 2 t^2 + 5, exactly representable by one Hermite segment.
    auto y = [](double t) { return t * t * t - 2.0 * t * t + 5.0; };
    auto d = [](double t) { return 3.0 * t * t - 4.0 * t; };
    const double dt = 0.25;
    const std::size_t n = 40;
    std::vector<double> ys(n + 1), ds(n + 1), out(n);
    for (std::size_t k = 0; k <= n; ++k) {
        ys[k] = y(dt * static_cast<double>(k));
        ds[k] = d(dt * static_cast<double>(k));
    }
    simd::scalar_ops().hermite_half(ys.data(), ds.data(), dt, out.data(), n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t_mid = dt * (static_cast<double>(k) + 0.5);
        CHECK(out[k] == doctest::Approx(y(t_mid)).epsilon(1e-13));
    }
}

TEST_CASE("avx2 backend matches scalar on every kernel") {
    const simd::Ops* avx = simd::avx2_ops();
    if (avx == nullptr) {
        MESSAGE("avx2 backend unavailable on this machine; skipping");
        return;
    }
    const simd::Ops& sc = simd::scalar_ops();
    std::mt19937_64 rng(103);
    for (std::size_t n : kSizes) {
        const auto a = random_vec(rng, n, -3.0, 3.0);
        const auto b = random_vec(rng, n, -3.0, 3.0);
        const auto w = random_vec(rng, n, 0.0, 1.0);
        const auto x = random_vec(rng, n, 0.0, 80.0);

        CHECK(close(avx->dot(a.data(), b.data(), n), sc.dot(a.data(), b.data(), n),
                    1e-12));
        if (n > 0)
            CHECK(close(avx->dot_rev(a.data(), b.data() + (n - 1), n),
                        sc.dot_rev(a.data(), b.data() + (n - 1), n), 1e-12));
        for (double alpha : {0.0, 0.5})
            CHECK(close(avx->saturated_sum(w.data(), x.data(), alpha, n),
                        sc.saturated_sum(w.data(), x.data(), alpha, n), 1e-12));

        if (n >= 1) {
            std::vector<double> out_sc(n), out_avx(n);
            std::vector<double> ys = random_vec(rng, n + 1, -5.0, 5.0);
            std::vector<double> ds = random_vec(rng, n + 1, -5.0, 5.0);
            sc.hermite_half(ys.data(), ds.data(), 0.1, out_sc.data(), n);
            avx->hermite_half(ys.data(), ds.data(), 0.1, out_avx.data(), n);
            for (std::size_t k = 0; k < n; ++k)
                CHECK(close(out_avx[k], out_sc[k], 1e-12));
        }
    }
}

TEST_CASE("backend selection honours requests and falls back gracefully") {
    REQUIRE(simd::set_backend("scalar"));
    CHECK(std::string(simd::ops().name) == "scalar");

    const bool have_avx2 = simd::avx2_ops() != nullptr;
    CHECK(simd::set_backend("avx2") == have_avx2);
    if (have_avx2) CHECK(std::string(simd::ops().name) == "avx2");

    CHECK_FALSE(simd::set_backend("never-a-backend"));

    REQUIRE(simd::set_backend("auto"));
    if (have_avx2)
        CHECK(std::string(simd::ops().name) == "avx2");
    else
        CHECK(std::string(simd::ops().name) == "scalar");
}
