#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "specnorm/error.hpp"
#include "specnorm/fourier.hpp"
#include "specnorm/spectral.hpp"

using namespace specnorm;
using testutil::vec;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("construction rejects bad tables") {
    const Ambient a(2);
    CHECK_THROWS_AS(RealFn(a, {1.0, 2.0, 3.0}), InvalidArgument);
    CHECK_THROWS_AS(RealFn(a, {1.0, 2.0, 3.0, NAN}), InvalidArgument);
    CHECK_THROWS_AS(RealFn(a, {1.0, INFINITY, 3.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(RealFn(a) + RealFn(Ambient(3)), AmbientMismatch);
}

TEST_CASE("wht examples") {
    const Ambient a(2);
    CHECK(vec(wht(RealFn(a))) == std::vector<double>(4, 0.0));
    CHECK(vec(wht(constant(a, 1.0))) == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    CHECK(vec(wht(testutil::three_corner())) == std::vector<double>{0.75, 0.25, 0.25, -0.25});
}

TEST_CASE("iwht examples") {
    const Ambient a(2);
    CHECK(vec(iwht(Spectrum(a))) == std::vector<double>(4, 0.0));
    CHECK(vec(iwht(Spectrum(a, {1.0, 0.0, 0.0, 0.0}))) == std::vector<double>(4, 1.0));
    CHECK(iwht(Spectrum(a, {0.75, 0.25, 0.25, -0.25})) == testutil::three_corner());
}

TEST_CASE("convolve examples") {
    const Ambient a(3);
    CHECK(convolve(constant(a, 1.0), constant(a, 1.0)) == constant(a, 1.0));
    const Subgroup h = rref_span(a, {0b011, 0b100});
    const RealFn c = convolve(coset_indicator(h), haar_measure(h));
    CHECK(max_abs_diff(c.values(), coset_indicator(h).values()) <= 1e-15);

    const Ambient two(2);
    const RealFn ind(two, {1.0, 1.0, 0.0, 0.0});  // A = {00, 01}
    CHECK(convolve(ind, ind)[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("norm and inner product examples") {
    const Ambient a(4);
    for (double p : {1.0, 2.0, 3.5, kInf}) CHECK(lp_norm(constant(a, 1.0), p) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lp_norm(constant(a, 1.0), 0.5), InvalidArgument);

    const Subgroup h = rref_span(a, {0b0011, 0b0101});
    CHECK(spec_lp_norm(wht(coset_indicator(h, 0b1000)), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spec_lp_norm(wht(testutil::three_corner()), 1.0) == 1.5);

    Rng rng(3);
    const RealFn f = testutil::random_real(a, rng);
    CHECK(inner(f, RealFn(a)) == 0.0);
    CHECK(inner(coset_indicator(h), coset_indicator(h)) == doctest::Approx(h.density()));

    // The parallelogram 00, 01, 10 / 11 certificate for the three-corner function.
    const Ambient two(2);
    const RealFn phi = point_mass(two, 0) + point_mass(two, 1) + point_mass(two, 2) - point_mass(two, 3);
    CHECK(inner(testutil::three_corner(), phi) == doctest::Approx(3.0));
    CHECK(spec_lp_norm(wht(phi), kInf) == doctest::Approx(2.0));
}

TEST_CASE("fast transform matches the naive definition for n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        Rng rng(21, static_cast<std::uint64_t>(n));
        const Ambient a(n);
        for (int t = 0; t < 5; ++t) {
            const RealFn f = testutil::random_real(a, rng);
            const auto fast = vec(wht(f));
            const auto slow = oracle::wht(vec(f));
            CHECK(max_abs_diff(fast, slow) <= 1e-12);
        }
    }
}

TEST_CASE("Parseval, inversion and Hausdorff-Young on random functions") {
    for (int n : {1, 3, 6, 10, 14, 16}) {
        Rng rng(22, static_cast<std::uint64_t>(n));
        const Ambient a(n);
        for (int t = 0; t < 3; ++t) {
            const RealFn f = testutil::random_real(a, rng, -3.0, 3.0);
            const Spectrum s = wht(f);
            const double l2 = lp_norm(f, 2.0);
            const double s2 = spec_lp_norm(s, 2.0);
            CHECK(rel_err(s2 * s2, l2 * l2) <= 1e-12);
            CHECK(max_abs_diff(iwht(s).values(), f.values()) <= 1e-12 * (1.0 + lp_norm(f, kInf)));
            CHECK(lp_norm(f, kInf) <= spec_lp_norm(s, 1.0) + 1e-12);
        }
    }
}

TEST_CASE("convolution theorem and Plancherel") {
    for (int n : {2, 5, 7}) {
        Rng rng(23, static_cast<std::uint64_t>(n));
        const Ambient a(n);
        const RealFn f = testutil::random_real(a, rng);
        const RealFn g = testutil::random_real(a, rng);
        const RealFn c = convolve(f, g);
        CHECK(max_abs_diff(c.values(), oracle::convolve(vec(f), vec(g))) <= 1e-12);
        const Spectrum sf = wht(f), sg = wht(g), sc = wht(c);
        for (Point r = 0; r < sc.size(); ++r) CHECK(std::abs(sc[r] - sf[r] * sg[r]) <= 1e-12);
        CHECK(inner(f, g) == doctest::Approx(spec_inner(sf, sg)).epsilon(1e-12));
    }
}

TEST_CASE("pointwise algebra") {
    const Ambient a(3);
    Rng rng(24);
    const RealFn f = testutil::random_real(a, rng);
    CHECK(power(f, 0) == constant(a, 1.0));
    CHECK(power(f, 1) == f);
    CHECK(max_abs_diff(power(f, 3).values(), (f * f * f).values()) <= 1e-15);
    CHECK_THROWS_AS(power(f, -1), InvalidArgument);
    CHECK((2.0 * f - f) == f);
}
