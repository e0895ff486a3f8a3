#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "specnorm/error.hpp"
#include "specnorm/rng.hpp"
#include "specnorm/spectral.hpp"

using namespace specnorm;
using testutil::vec;

namespace {

double naive_a_norm(const RealFn& f) {
    double s = 0;
    for (double c : oracle::wht(vec(f))) s += std::abs(c);
    return s;
}

Subgroup random_sub(Ambient amb, Rng& rng) {
    return random_subgroup(amb, rng.between(0, amb.n()), rng);
}

}  // namespace

TEST_CASE("a_norm examples") {
    const Ambient a(5);
    CHECK(a_norm(RealFn(a)) == 0.0);
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Subgroup h = random_sub(a, rng);
        const Point t = static_cast<Point>(rng.below(a.size()));
        CHECK(a_norm(coset_indicator(h, t)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(a_norm(testutil::three_corner()) == doctest::Approx(1.5));
}

TEST_CASE("a_norm is submultiplicative on random pairs") {
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        const Ambient a(rng.between(1, 7));
        const RealFn f = testutil::random_real(a, rng);
        const RealFn g = testutil::random_real(a, rng);
        const double lhs = naive_a_norm(f * g);
        REQUIRE(lhs <= naive_a_norm(f) * naive_a_norm(g) + 1e-12);
        CHECK(a_norm(f * g) == doctest::Approx(lhs).epsilon(1e-12));
    }
}

TEST_CASE("psi examples") {
    const Ambient a(4);
    Rng rng(13);
    const RealFn f = testutil::random_real(a, rng);
    CHECK(psi(f, Subgroup::trivial(a)) == f);
    const RealFn avg = psi(f, Subgroup::full(a));
    double mean = 0;
    for (double v : f.values()) mean += v;
    mean /= 16;
    for (double v : avg.values()) CHECK(v == doctest::Approx(mean).epsilon(1e-14));

    const Ambient two(2);
    const RealFn p = psi(testutil::three_corner(), rref_span(two, {0b01}));
    CHECK(vec(p) == std::vector<double>{1.0, 1.0, 0.5, 0.5});
    CHECK_THROWS_AS(psi(f, Subgroup::full(two)), AmbientMismatch);
}

TEST_CASE("psi against the averaging oracle and its Fourier form") {
    Rng rng(14);
    for (int i = 0; i < 200; ++i) {
        const Ambient a(rng.between(1, 7));
        const RealFn f = testutil::random_real(a, rng);
        const Subgroup h = random_sub(a, rng);
        const RealFn p = psi(f, h);
        const auto elems = testutil::elements(h);
        const auto expect = oracle::psi(vec(f), elems);
        REQUIRE(max_abs_diff(p.values(), expect) <= 1e-12);

        for (Point x = 0; x < p.size(); ++x) REQUIRE(p[x] == p[h.reduce(x)]);

        const auto fhat = oracle::wht(vec(f));
        const auto phat = oracle::wht(vec(p));
        const auto dual = oracle::annihilator(a.n(), elems);
        for (Point r = 0; r < a.size(); ++r) {
            const bool in_dual = std::binary_search(dual.begin(), dual.end(), r);
            REQUIRE(std::abs(phat[r] - (in_dual ? fhat[r] : 0.0)) <= 1e-12);
        }
        REQUIRE(a_norm(p) <= a_norm(f) + 1e-12);
        REQUIRE(lp_norm(p, kInf) <= lp_norm(f, kInf) + 1e-12);
    }
}

TEST_CASE("psi composition and spectral split") {
    Rng rng(15);
    for (int i = 0; i < 200; ++i) {
        const Ambient a(rng.between(1, 7));
        const RealFn f = testutil::random_real(a, rng);
        const Subgroup h1 = random_sub(a, rng);
        // h2 = h1 plus a few random elements
        Subgroup h2 = h1;
        for (int k = rng.between(0, 2); k > 0; --k) h2 = extend(h2, static_cast<Point>(rng.below(a.size())));
        REQUIRE(max_abs_diff(psi(psi(f, h1), h1).values(), psi(f, h1).values()) <= 1e-12);
        REQUIRE(max_abs_diff(psi(psi(f, h1), h2).values(), psi(f, h2).values()) <= 1e-12);

        const RealFn p = psi(f, h1);
        REQUIRE(std::abs(a_norm(f) - (a_norm(p) + a_norm(f - p))) <= 1e-9);
    }
}

TEST_CASE("coset_spectral_mass examples") {
    const Ambient a(4);
    Rng rng(16);
    const RealFn f = testutil::random_real(a, rng);
    for (Point r : {0u, 3u, 9u}) {
        CHECK(coset_spectral_mass(f, Subgroup::trivial(a), r) == doctest::Approx(a_norm(f)).epsilon(1e-14));
    }
    const Subgroup h = rref_span(a, {0b0110, 0b1000});
    const Subgroup dual = annihilator(h);
    for (Point r = 0; r < a.size(); ++r) {
        if (!dual.contains(r)) CHECK(coset_spectral_mass(coset_indicator(h), h, r) == doctest::Approx(0.0));
    }
    const Ambient two(2);
    CHECK(coset_spectral_mass(testutil::three_corner(), rref_span(two, {0b01}), 0b01) == 0.5);
}

TEST_CASE("dual_coset_masses add up to the norm") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const Ambient a(rng.between(1, 7));
        const RealFn f = testutil::random_real(a, rng);
        const Subgroup dual = random_sub(a, rng);
        const auto masses = dual_coset_masses(wht(f), dual);
        const auto reps = coset_reps(dual);
        REQUIRE(masses.size() == reps.size());
        double total = 0;
        const auto fhat = oracle::wht(vec(f));
        for (std::size_t k = 0; k < reps.size(); ++k) {
            double m = 0;
            for (Point v : enumerate(dual)) m += std::abs(fhat[reps[k] ^ v]);
            REQUIRE(std::abs(masses[k] - m) <= 1e-12);
            total += masses[k];
        }
        REQUIRE(std::abs(total - a_norm(f)) <= 1e-12);
    }
}

TEST_CASE("is_spectrally_supported examples") {
    const Ambient a(4);
    const Subgroup h = rref_span(a, {0b0011});
    for (double eta : {1e-12, 0.1, 1.0}) CHECK(is_spectrally_supported(coset_indicator(h), h, eta).supported);

    Rng rng(18);
    const RealFn f = testutil::random_real(a, rng);
    double top = 0;
    const Spectrum s = wht(f);
    for (Point r = 1; r < a.size(); ++r) top = std::max(top, std::abs(s[r]));
    CHECK(is_spectrally_supported(f, Subgroup::full(a), top).supported);
    CHECK_FALSE(is_spectrally_supported(f, Subgroup::full(a), top * 0.999).supported);
    CHECK(measured_eta(f, Subgroup::full(a)) == top);

    const Ambient two(2);
    const SupportCheck c = is_spectrally_supported(testutil::three_corner(), rref_span(two, {0b01}), 0.4);
    CHECK_FALSE(c.supported);
    CHECK(c.witness == 0b01);
    CHECK(c.worst_mass == 0.5);
}

TEST_CASE("find_spectral_support examples") {
    const Ambient a(5);
    const Subgroup h = rref_span(a, {0b00011, 0b01100});
    const SupportCertificate c = find_spectral_support(coset_indicator(h), Subgroup::full(a), 0.5 * h.density());
    CHECK(c.subgroup == h);
    CHECK(c.steps_used == a.n() - h.dim());
    CHECK(c.worst_mass <= c.eta);

    Rng rng(19);
    const RealFn f = testutil::random_real(a, rng);
    const SupportCertificate same = find_spectral_support(f, h, a_norm(f));
    CHECK(same.subgroup == h);
    CHECK(same.steps_used == 0);

    const Ambient two(2);
    const RealFn tc = testutil::three_corner();
    const auto trace = oracle::greedy_support(2, oracle::wht(vec(tc)), {}, 0.2);
    const SupportCertificate g = find_spectral_support(tc, Subgroup::full(two), 0.2);
    CHECK(trace.steps == 2);
    CHECK(g.steps_used == trace.steps);
    CHECK(testutil::elements(annihilator(g.subgroup)) == trace.dual);
    CHECK(g.subgroup == Subgroup::trivial(two));
}

TEST_CASE("find_spectral_support follows the greedy oracle and the step bound") {
    Rng rng(20);
    for (int i = 0; i < 300; ++i) {
        const Ambient a(rng.between(1, 6));
        const RealFn f = testutil::random_real(a, rng);
        const Subgroup h = random_sub(a, rng);
        const double eta = rng.uniform(0.02, 1.0) * a_norm(f);
        const SupportCertificate c = find_spectral_support(f, h, eta);
        const auto dual_h = testutil::elements(annihilator(h));
        const auto trace = oracle::greedy_support(a.n(), oracle::wht(vec(f)), dual_h, eta);
        REQUIRE(testutil::elements(annihilator(c.subgroup)) == trace.dual);
        REQUIRE(c.steps_used == trace.steps);
        REQUIRE(c.subgroup.is_subgroup_of(h));
        REQUIRE(h.dim() - c.subgroup.dim() == c.steps_used);
        REQUIRE(c.worst_mass <= eta);
        REQUIRE(c.steps_used <= static_cast<int>(std::ceil(a_norm(f) / eta)));
        REQUIRE(is_spectrally_supported(f, c.subgroup, eta).supported);

        const auto chain = spectral_support_chain(wht(f), h, eta * 0.25);
        REQUIRE(chain.front().subgroup == h);
        for (const auto& e : chain) {
            if (e.worst_mass <= eta) {
                REQUIRE(e.subgroup == c.subgroup);
                break;
            }
        }
    }
}

TEST_CASE("approx_hom_defect") {
    const Ambient a(6);
    Rng rng(21);
    const Subgroup h = rref_span(a, {0b000011, 0b110000});
    const RealFn g = testutil::random_real(a, rng);
    CHECK(approx_hom_defect(coset_indicator(h), g, h) == doctest::Approx(0.0).epsilon(1e-12));
    const RealFn f = testutil::random_real(a, rng);
    CHECK(approx_hom_defect(f, constant(a, 1.0), h) <= 1e-12);

    for (int i = 0; i < 500; ++i) {
        const RealFn x = testutil::random_real(a, rng);
        const RealFn y = testutil::random_real(a, rng);
        const Subgroup k = random_sub(a, rng);
        const double eta = measured_eta(x, k);
        const RealFn lhs = psi(x * y, k) - psi(x, k) * psi(y, k);
        const double defect = naive_a_norm(lhs);
        REQUIRE(std::abs(defect - approx_hom_defect(x, y, k)) <= 1e-9);
        REQUIRE(defect <= eta * naive_a_norm(y) + 1e-9);
    }
}

TEST_CASE("pd examples") {
    for (int d = 0; d <= kMaxPdDegree; ++d) {
        for (int k = -d; k <= d; ++k) CHECK(pd_eval(k, d) == 0.0);
    }
    CHECK(pd_eval(0.5, 1) == -0.75);
    CHECK(std::abs(pd_eval(0.5, 1)) >= 0.5);
    CHECK(pd_eval(0.3, 0) == 0.3);
    CHECK_THROWS_AS(pd_eval(0.1, -1), InvalidArgument);
    CHECK_THROWS_AS(pd_eval(0.1, kMaxPdDegree + 1), InvalidArgument);

    // 4^d/(2d)! prod (t - j) expanded by hand for d = 2
    for (double t : {-2.4, -0.7, 0.2, 1.9}) {
        const double expect = 16.0 / 24.0 * (t + 2) * (t + 1) * t * (t - 1) * (t - 2);
        CHECK(pd_eval(t, 2) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("pd bound and detection on almost-integer functions") {
    Rng rng(22);
    for (int i = 0; i < 300; ++i) {
        const Ambient a(rng.between(1, 6));
        const int d = rng.between(1, 6);
        const double eps = rng.uniform(0.0, 0.2);
        RealFn f(a);
        for (Point x = 0; x < f.size(); ++x) {
            const int base = rng.between(-d, d);
            const double off = rng.uniform(-eps, eps);
            f[x] = std::clamp(base + off, -static_cast<double>(d), static_cast<double>(d));
        }
        const double dev = round_to_int(f).eps;
        const RealFn p = pd_apply(f, d);
        for (Point x = 0; x < f.size(); ++x) REQUIRE(p[x] == pd_eval(f[x], d));
        REQUIRE(lp_norm(p, kInf) <= dev * std::pow(4.0, d) * (1 + 1e-12) + 1e-300);

        const double delta = lp_norm(p, kInf);
        if (delta <= 0.5) REQUIRE(dev <= delta + 1e-15);
    }
}

TEST_CASE("round_to_int") {
    const Ambient a(3);
    const Subgroup h = rref_span(a, {0b101});
    const RealFn b = coset_indicator(h, 0b010);
    const AlmostIntFn r = round_to_int(b);
    CHECK(r.f_int == b);
    CHECK(r.eps == 0.0);

    Rng rng(23);
    RealFn noisy = coset_indicator(h);
    for (Point x = 0; x < noisy.size(); ++x) noisy[x] += (rng.bernoulli(0.5) ? 0.01 : -0.01);
    const AlmostIntFn rn = round_to_int(noisy);
    CHECK(rn.f_int == coset_indicator(h));
    CHECK(rn.eps == doctest::Approx(0.01).epsilon(1e-12));

    RealFn half = b;
    half[3] = 0.5;
    CHECK_THROWS_AS(round_to_int(half), NotAlmostInteger);
    half[3] = -2.5 + 1e-10;
    CHECK_THROWS_AS(round_to_int(half), NotAlmostInteger);
    half[3] = -2.4;
    CHECK(round_to_int(half).f_int[3] == -2.0);
    CHECK(frac_dist(2.75) == 0.25);
}
