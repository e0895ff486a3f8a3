#include "specnorm/laws.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>

#include "specnorm/error.hpp"
#include "specnorm/generate.hpp"
#include "specnorm/kernels.hpp"

namespace specnorm {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kNoMargin = std::numeric_limits<double>::infinity();

struct Trial {
    double margin = kNoMargin;
    bool failed = false;
    std::string check;
    Json input = Json::object();
    Json record = Json::object();

    void require(bool ok, double slack, const char* what) {
        margin = std::min(margin, slack);
        if (!ok && !failed) {
            failed = true;
            check = what;
        }
    }
    void require(bool ok, const char* what) {
        if (!ok && !failed) {
            failed = true;
            check = what;
        }
    }
    /// measured <= bound + tol
    void le(double measured, double bound, double tol, const char* what) {
        const double slack = bound + tol - measured;
        require(slack >= 0.0, slack, what);
    }
};

template <class Fn>
std::vector<Trial> run_trials(std::uint64_t count, Fn&& fn) {
    std::vector<Trial> out(count);
    std::vector<std::exception_ptr> errors(count);
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(kernels::threads())
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

LawReport summarize(const std::string& id, int n, std::uint64_t seed,
                    const std::vector<Trial>& trials, Clock::time_point start) {
    LawReport r;
    r.law_id = id;
    r.n = n;
    r.seed = seed;
    r.trials = trials.size();
    r.worst_margin = kNoMargin;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const Trial& t = trials[i];
        r.worst_margin = std::min(r.worst_margin, t.margin);
        if (!t.failed) continue;
        if (r.failures++ == 0) {
            r.counterexample = Json{{"law", id},  {"n", n},         {"seed", seed},
                                    {"trial", i}, {"check", t.check}, {"input", t.input}};
        }
    }
    r.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

void require_n(int n, int lo, int hi, const char* law) {
    if (n < lo || n > hi) {
        throw InvalidArgument(std::string(law) + " needs n in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// --- random instances -------------------------------------------------------

RealFn random_function(Ambient amb, Rng& rng, std::string& family) {
    switch (rng.below(4)) {
        case 0:
            family = "boolean";
            return random_boolean(amb, rng);
        case 1:
            family = "coset-ring";
            return generate_coset_ring(amb, rng.between(1, 4), rng).f;
        case 2: {
            family = "sparse-spectrum";
            Spectrum s(amb);
            const int k = rng.between(1, 6);
            for (int i = 0; i < k; ++i) s[rng.below(amb.size())] += rng.uniform(-1.0, 1.0);
            return iwht(s);
        }
        default: {
            family = "noisy-coset-ring";
            RealFn f = generate_coset_ring(amb, rng.between(1, 4), rng).f;
            for (Point x = 0; x < f.size(); ++x) f[x] += rng.uniform(-0.01, 0.01);
            return f;
        }
    }
}

Subgroup random_subgroup_any(Ambient amb, Rng& rng, int max_codim) {
    return random_subgroup(amb, rng.between(0, max_codim), rng);
}

// A coset of a random subgroup with some points removed and some noise added.
PointSet structured_set(Ambient amb, Rng& rng) {
    const int n = amb.n();
    const Subgroup h = random_subgroup(amb, rng.between(1, std::max(1, n - 2)), rng);
    const Point offset = static_cast<Point>(rng.below(amb.size()));
    PointSet a = PointSet::of_subgroup(h, offset);
    static constexpr double kDrop[] = {0.0, 1.0 / 16, 1.0 / 4};
    const double drop = kDrop[rng.below(3)];
    for (Point x : a.members()) {
        if (rng.bernoulli(drop)) a.erase(x);
    }
    const std::uint64_t noise = rng.below(h.size() / 4 + 1);
    for (std::uint64_t i = 0; i < noise; ++i) a.insert(static_cast<Point>(rng.below(amb.size())));
    if (a.empty()) a.insert(offset);
    return a;
}

PointSet density_set(Ambient amb, Rng& rng) {
    static constexpr double kDensity[] = {1.0 / 8, 1.0 / 4, 1.0 / 2};
    const double p = kDensity[rng.below(3)];
    PointSet a(amb);
    for (Point x = 0; x < amb.size(); ++x) {
        if (rng.bernoulli(p)) a.insert(x);
    }
    if (a.empty()) a.insert(static_cast<Point>(rng.below(amb.size())));
    return a;
}

PointSet random_set(Ambient amb, Rng& rng, std::string& family) {
    if (rng.bernoulli(0.5)) {
        family = "density";
        return density_set(amb, rng);
    }
    family = "structured";
    return structured_set(amb, rng);
}

/// Support is a coset of a subgroup.
bool is_coset_indicator(const RealFn& f) {
    const auto& v = f.values();
    if (!std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; })) {
        return false;
    }
    const auto s = PointSet::support(f).members();
    if (s.empty()) return false;
    std::vector<Point> diffs;
    for (Point x : s) diffs.push_back(x ^ s.front());
    return rref_span(f.ambient(), diffs).size() == s.size();
}

long double cube(std::size_t k) {
    const auto v = static_cast<long double>(k);
    return v * v * v;
}

// --- individual laws --------------------------------------------------------

Trial tiny_norm_trial(Ambient amb, std::uint64_t mask) {
    Trial t;
    RealFn f(amb);
    for (Point x = 0; x < f.size(); ++x) f[x] = static_cast<double>(mask >> x & 1);
    const double a = a_norm(f);
    const auto s = PointSet::support(f);
    const auto members = s.members();

    const bool coset = is_coset_indicator(f);
    bool closed = true;
    Point px = 0, ph = 0, pk = 0;
    for (std::size_t i = 0; i < members.size() && closed; ++i) {
        for (std::size_t j = i + 1; j < members.size() && closed; ++j) {
            for (std::size_t k = j + 1; k < members.size() && closed; ++k) {
                if (!s.contains(members[i] ^ members[j] ^ members[k])) {
                    closed = false;
                    px = members[i];
                    ph = members[i] ^ members[j];
                    pk = members[i] ^ members[k];
                }
            }
        }
    }
    t.require(coset == closed, "coset <=> parallelogram-closed");
    if (coset) {
        t.le(a, 1.0, 1e-9, "coset has a_norm <= 1");
    } else {
        t.le(1.5, a, 1e-9, "non-coset has a_norm >= 3/2");
        t.require(a > 1.0 + 1e-9, "non-coset has a_norm > 1");
    }
    if (!closed) {
        const RealFn phi = point_mass(amb, px) + point_mass(amb, px ^ ph) +
                           point_mass(amb, px ^ pk) - point_mass(amb, px ^ ph ^ pk);
        const double ip = inner(f, phi);
        const double sup = spec_lp_norm(wht(phi), kInf);
        t.require(std::abs(ip - 3.0) <= 1e-9, "<f, phi> = 3");
        t.require(std::abs(sup - 2.0) <= 1e-9, "phi^ sup norm = 2");
    }
    t.record = {{"a_norm", a}, {"coset", coset}};
    if (t.failed) t.input = {{"n", amb.n()}, {"support", to_json(s)}};
    return t;
}

Trial approx_hom_trial(Ambient amb, Rng& rng) {
    Trial t;
    std::string ff, gf;
    const RealFn f = random_function(amb, rng, ff);
    const RealFn g = random_function(amb, rng, gf);
    const Subgroup h = random_subgroup_any(amb, rng, amb.n());
    const double eta = measured_eta(f, h);
    const double defect = approx_hom_defect(f, g, h);
    const double bound = eta * a_norm(g);
    t.le(defect, bound, 1e-9, "defect <= eta a_norm(g)");
    t.record = {{"eta", eta}, {"defect", defect}, {"bound", bound}};
    if (t.failed) {
        t.input = {{"f", f.values()}, {"g", g.values()}, {"subgroup", to_json(h)}};
    }
    return t;
}

Trial power_bound_trial(Ambient amb, Rng& rng) {
    Trial t;
    std::string family;
    const RealFn f = random_function(amb, rng, family);
    const Subgroup h = random_subgroup_any(amb, rng, amb.n());
    const double eta = measured_eta(f, h);
    const double m = a_norm(f);
    const RealFn pf = psi(f, h);
    for (int k = 2; k <= 5; ++k) {
        const double lhs = a_norm(psi(power(f, k), h) - power(pf, k));
        const double rhs = eta * (k - 1) * std::pow(m, k - 1);
        t.le(lhs, rhs, 1e-9 * std::max(1.0, std::pow(m, k)), "power bound");
    }
    t.record = {{"eta", eta}, {"M", m}};
    if (t.failed) t.input = {{"f", f.values()}, {"subgroup", to_json(h)}};
    return t;
}

Trial spectral_support_trial(Ambient amb, Rng& rng) {
    Trial t;
    std::string family;
    const RealFn f = random_function(amb, rng, family);
    const Subgroup h = random_subgroup_any(amb, rng, amb.n() - 1);
    const double m = a_norm(f);
    const double eta = std::max(m, 1e-3) * std::exp2(-rng.uniform(0.5, 8.0));
    const SupportCertificate cert = find_spectral_support(f, h, eta);
    const double cap = std::ceil(m / eta);
    t.le(cert.steps_used, cap, 0.0, "steps <= ceil(M / eta)");
    t.require(cert.subgroup.is_subgroup_of(h), "H' <= H");
    t.require(h.dim() - cert.subgroup.dim() == cert.steps_used, "codim(H : H') = steps");
    t.require(cert.worst_mass <= eta, "worst mass <= eta");
    t.require(is_spectrally_supported(f, cert.subgroup, eta).supported, "certificate re-validates");
    t.record = {{"steps", cert.steps_used}, {"cap", cap}};
    if (t.failed) {
        t.input = {{"f", f.values()}, {"subgroup", to_json(h)}, {"eta", eta}};
    }
    return t;
}

// For every coset of h meeting `from`: the whole coset lies in `into`.
// Slack is the least normalised nu4 level minus `floor` over those points.
void check_coset_closure(Trial& t, const PointSet& from, const PointSet& into, const Subgroup& h,
                         const std::vector<__int128>& counts, long double a3, double floor,
                         const char* what) {
    std::vector<char> hit(from.ambient().size(), 0);
    for (Point x : from.members()) hit[h.reduce(x)] = 1;
    bool ok = true;
    double slack = kNoMargin;
    for (Point x = 0; x < hit.size(); ++x) {
        if (!hit[h.reduce(x)]) continue;
        ok = ok && into.contains(x);
        slack = std::min(slack, static_cast<double>(static_cast<long double>(counts[x]) / a3) - floor);
    }
    t.require(ok, slack, what);
}

Trial bogolyubov_trial(Ambient amb, Rng& rng) {
    Trial t;
    std::string family;
    const PointSet a = random_set(amb, rng, family);
    const auto counts = quadruple_counts(a);
    const long double a3 = cube(a.size());
    Json codims = Json::array();
    for (const auto& [delta, eps] : {std::pair{0.5, 0.25}, std::pair{0.75, 0.5}}) {
        const Subgroup h = bogolyubov_subgroup(a, std::sqrt(eps / 2.0));
        const PointSet s_hi = s_eta(counts, a, delta);
        const PointSet s_lo = s_eta(counts, a, delta - eps);
        check_coset_closure(t, s_hi, s_lo, h, counts, a3, delta - eps, "S_delta + H in S_(delta-eps)");
        codims.push_back(h.codim());
    }
    t.record = {{"family", family}, {"codims", codims}};
    if (t.failed) t.input = {{"n", amb.n()}, {"set", to_json(a)}};
    return t;
}

Trial lemma13_trial(Ambient amb, Rng& rng) {
    Trial t;
    const PointSet a = structured_set(amb, rng);
    const SetStats st = set_stats(a);
    const double k = st.doubling;
    const double eta = 1.0 / (2.0 * std::pow(k, 4));
    const PointSet s = s_eta(a, eta);
    // E 1_S >= alpha / 2  <=>  2 |S| >= |A|
    const double ratio = static_cast<double>(s.size()) / static_cast<double>(a.size());
    t.require(2 * s.size() >= a.size(), ratio - 0.5, "E 1_S >= alpha / 2");
    // max 1_A * 1_S >= eta alpha / 2  <=>  max count >= eta |A| / 2
    const auto conv = sum_counts(a, s);
    const std::int64_t top = *std::max_element(conv.begin(), conv.end());
    const double rel = static_cast<double>(top) / static_cast<double>(a.size());
    t.require(rel >= eta / 2.0, rel - eta / 2.0, "max 1_A * 1_S >= eta alpha / 2");
    t.record = {{"K", k}, {"eta", eta}};
    if (t.failed) t.input = {{"n", amb.n()}, {"set", to_json(a)}};
    return t;
}

Trial plunnecke_trial(Ambient amb, Rng& rng) {
    Trial t;
    std::string family;
    const PointSet a = random_set(amb, rng, family);
    const PointSet a2 = sumset(a, a);
    const PointSet a4 = sumset(a2, a2);
    // |4A| / |A| <= (|2A| / |A|)^4  <=>  |4A| |A|^3 <= |2A|^4
    const auto sa = static_cast<__int128>(a.size());
    const auto s2 = static_cast<__int128>(a2.size());
    const auto s4 = static_cast<__int128>(a4.size());
    const double k = static_cast<double>(a2.size()) / static_cast<double>(a.size());
    const double slack = std::pow(k, 4) - static_cast<double>(a4.size()) / static_cast<double>(a.size());
    t.require(s4 * sa * sa * sa <= s2 * s2 * s2 * s2, slack, "E 1_4A <= K^4 alpha");
    t.record = {{"family", family}, {"K", k}};
    if (t.failed) t.input = {{"n", amb.n()}, {"set", to_json(a)}};
    return t;
}

Trial lemma14_trial(Ambient amb, Rng& rng) {
    Trial t;
    const PointSet a = structured_set(amb, rng);
    const double size = static_cast<double>(a.size());
    const double k = set_stats(a).doubling;
    const double k4 = std::pow(k, 4);
    const double eta0 = 1.0 / (2.0 * k4);
    const double eps = 1.0 / (64.0 * std::pow(k, 12));
    const auto levels = static_cast<std::uint64_t>(std::ceil(16.0 * k4 * k4));
    const auto counts = quadruple_counts(a);
    const long double a3 = cube(a.size());

    // Points by layer: layer j holds eta0 - (j+1) eps <= nu4 / alpha^3 < eta0 - j eps.
    std::map<std::uint64_t, std::size_t> layer;
    for (Point x = 0; x < counts.size(); ++x) {
        const long double v = static_cast<long double>(counts[x]) / a3;
        if (v >= eta0) continue;
        const long double j = std::floor((eta0 - v) / eps);
        if (j < static_cast<long double>(levels)) ++layer[static_cast<std::uint64_t>(j)];
    }
    const double thin = size / (16.0 * k4);
    std::optional<std::uint64_t> chosen;
    PointSet s_hi(amb), s_lo(amb);
    for (std::uint64_t j = 0; j < levels && !chosen; ++j) {
        auto it = layer.find(j);
        const std::size_t approx = it == layer.end() ? 0 : it->second;
        if (static_cast<double>(approx) > thin + 2.0) continue;
        s_hi = s_eta(counts, a, eta0 - static_cast<double>(j) * eps);
        s_lo = s_eta(counts, a, eta0 - static_cast<double>(j + 1) * eps);
        const double diff = static_cast<double>(s_lo.size() - s_hi.size());
        if (diff <= thin) chosen = j;
    }
    t.require(chosen.has_value(), "some layer below eta0 is thin");
    if (chosen) {
        const Subgroup h = bogolyubov_subgroup(a, 1.0 / (16.0 * k4 * k * k));
        const double lo_eta = eta0 - static_cast<double>(*chosen + 1) * eps;
        check_coset_closure(t, s_hi, s_lo, h, counts, a3, lo_eta, "S_eta + H in S_(eta-eps)");
        // X: points of S_lo whose H-coset is not entirely inside S_lo.
        std::vector<std::size_t> inside(amb.size(), 0);
        for (Point x : s_lo.members()) ++inside[h.reduce(x)];
        std::size_t x_size = 0;
        for (Point x : s_lo.members()) {
            if (inside[h.reduce(x)] != h.size()) ++x_size;
        }
        const double x_density = static_cast<double>(x_size) / static_cast<double>(amb.size());
        t.le(x_density / a.density(), 1.0 / (16.0 * k4), 1e-12, "E 1_X <= alpha / 16K^4");
        t.record = {{"K", k}, {"j", *chosen}, {"codim", h.codim()}, {"X", x_size}};
    }
    if (t.failed) t.input = {{"n", amb.n()}, {"set", to_json(a)}};
    return t;
}

Trial chang_trial(Ambient amb, Rng& rng) {
    Trial t;
    std::string family;
    const PointSet a = random_set(amb, rng, family);
    Json rows = Json::array();
    for (double rho : {0.5, 0.25}) {
        const auto spec = spec_set(a, rho).members();
        const int dim = rref_span(amb, spec).dim();
        const double bound = (1.0 + std::log(1.0 / a.density())) / (rho * rho);
        rows.push_back({{"rho", rho}, {"dim", dim}, {"bound", bound}, {"ratio", dim / bound}});
    }
    t.record = {{"family", family}, {"alpha", a.density()}, {"rows", rows}};
    return t;
}

/// #{(x_1..x_r) in A^r : x_1 + ... + x_r = 0}, exact.
__int128 zero_sum_count(const PointSet& a, int r) {
    std::vector<__int128> w(a.ambient().size(), 0);
    for (Point x : a.members()) w[x] = 1;
    kernels::serial::butterfly(std::span<__int128>(w));
    __int128 total = 0;
    for (__int128 v : w) {
        __int128 p = 1;
        for (int i = 0; i < r; ++i) p *= v;
        total += p;
    }
    return total >> a.ambient().n();
}

PointSet connectedness_set(Ambient amb, Rng& rng, std::string& family) {
    const int n = amb.n();
    PointSet a(amb);
    switch (rng.below(3)) {
        case 0: {
            family = "subgroup-minus-zero";
            const int dim = rng.between(2, std::min(n, 6));
            const Subgroup h = random_subgroup(amb, n - dim, rng);
            for (Point x : enumerate(h)) {
                if (x != 0 && !rng.bernoulli(1.0 / 8)) a.insert(x);
            }
            const std::uint64_t noise = rng.below(3);
            for (std::uint64_t i = 0; i < noise; ++i) a.insert(static_cast<Point>(rng.below(amb.size())));
            break;
        }
        case 1: {
            family = "sparse";
            const std::uint64_t k = 2 + rng.below(std::min<std::uint64_t>(39, amb.size() - 2));
            for (std::uint64_t i = 0; i < k; ++i) a.insert(static_cast<Point>(rng.below(amb.size())));
            break;
        }
        default: {
            family = "basis";
            const int dim = rng.between(2, n);
            for (int i = 0; i < dim; ++i) a.insert(Point{1} << i);
            const std::uint64_t extra = rng.below(4);
            for (std::uint64_t i = 0; i < extra; ++i) {
                a.insert(static_cast<Point>(rng.below(std::uint64_t{1} << dim)));
            }
            break;
        }
    }
    a.erase(0);
    if (a.empty()) a.insert(1);
    return a;
}

Trial connectedness_trial(Ambient amb, Rng& rng) {
    Trial t;
    std::string family;
    const PointSet a = connectedness_set(amb, rng, family);
    const int m = rng.between(2, 4);
    const ConnectednessResult res = is_arithmetically_connected(a, m);
    const std::size_t size = a.size();
    if (!res.connected) {
        const auto& w = res.witness;
        t.require(static_cast<int>(w.size()) == m, "witness has m elements");
        const Subgroup v = rref_span(amb, w);
        t.require(v.dim() == m, "witness is independent");
        PointSet inside(amb);
        for (Point x : enumerate(v)) {
            if (a.contains(x)) inside.insert(x);
        }
        t.require(inside == PointSet::from_members(amb, w), "no further element in the span");
        const double norm = a_norm(inside.indicator());
        t.le(std::sqrt(m / 3.0), norm, 1e-9, "a_norm(1_A 1_V) >= sqrt(m / 3)");
    } else if (size >= static_cast<std::size_t>(m * m)) {
        double best = -kNoMargin;
        bool some = false;
        const auto sz = static_cast<__int128>(size);
        for (int r = 3; r <= m + 1; ++r) {
            const __int128 sols = zero_sum_count(a, r);
            __int128 need = 1;
            for (int i = 0; i < r - 1; ++i) need *= sz;
            some = some || sols * (__int128{1} << (m + 2)) >= need;
            best = std::max(best, static_cast<double>(sols) * std::ldexp(1.0, m + 2) /
                                      static_cast<double>(need) - 1.0);
        }
        t.require(some, best, "some r has R_r(0) >= |A|^(r-1) / 2^(m+2)");
        const std::int64_t energy = additive_energy(a);
        const long double floor = cube(size) * std::ldexp(1.0L, -2 * m - 4);
        const auto e = static_cast<long double>(energy);
        t.require(e >= floor, static_cast<double>(e / floor - 1.0L), "energy >= 2^(-2m-4) |A|^3");
    }
    t.record = {{"family", family}, {"m", m}, {"connected", res.connected}, {"size", size}};
    if (t.failed) t.input = {{"n", amb.n()}, {"m", m}, {"set", to_json(a)}};
    return t;
}

Trial roundtrip_trial(int n_max, Rng& rng) {
    Trial t;
    const Ambient amb(rng.between(std::min(n_max, 4), n_max));
    const int flats = rng.between(1, 4);
    const CosetRingConstruction c = generate_coset_ring(amb, flats, rng);
    const Decomposition d = decompose(c.f);
    t.require(d.report.exact, "report.exact");
    t.require(evaluate(d.expr) == c.f, "evaluate(expr) = f");
    const bool single = is_coset_indicator(c.f);
    if (single) t.le(static_cast<double>(d.expr.length()), 2.0, 0.0, "single coset has L <= 2");
    for (const SplitRecord& s : d.report.splits) {
        const double gap = std::abs(s.a_norm_f1 + s.a_norm_f2 - s.a_norm_before);
        t.le(gap, 0.0, 1e-9, "norm additivity per split");
        if (!s.f2_finished) {
            t.le(0.5, s.a_norm_before - s.a_norm_f2, 1e-6, "progress >= 1/2 per split");
        }
    }
    t.record = {{"n", amb.n()},
                {"flats", flats},
                {"L", d.expr.length()},
                {"L_trivial", d.report.trivial_length},
                {"fallback", d.report.fallback_used},
                {"splits", d.report.splits.size()},
                {"single_coset", single}};
    if (t.failed) {
        t.input = {{"construction", to_json(c)}, {"decomposition", to_json(d)}};
    }
    return t;
}

template <class Fn>
LawReport seeded_law(const std::string& id, const LawOptions& o, Fn&& body) {
    const auto start = Clock::now();
    const Ambient amb(o.n);
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return body(amb, rng);
    });
    return summarize(id, o.n, o.seed, trials, start);
}

Json family_counts(const std::vector<Trial>& trials) {
    std::map<std::string, int> counts;
    for (const Trial& t : trials) {
        if (t.record.contains("family")) ++counts[t.record["family"].get<std::string>()];
    }
    Json out = Json::object();
    for (const auto& [k, v] : counts) out[k] = v;
    return out;
}

}  // namespace

Json to_json(const LawReport& r) {
    Json out = {{"law", r.law_id},
                {"n", r.n},
                {"seed", r.seed},
                {"trials", r.trials},
                {"failures", r.failures},
                {"passed", r.passed()},
                {"report_only", r.report_only}};
    out["worst_margin"] = std::isfinite(r.worst_margin) ? Json(r.worst_margin) : Json(nullptr);
    out["stats"] = r.stats;
    if (r.counterexample) out["counterexample"] = *r.counterexample;
    return out;
}

LawReport check_tiny_norm(int n) {
    require_n(n, 1, 4, "tiny-norm");
    const auto start = Clock::now();
    std::vector<Trial> all;
    Json per_dim = Json::array();
    bool min_ok = true;
    for (int dim = 1; dim <= n; ++dim) {
        const Ambient amb(dim);
        const std::uint64_t count = (std::uint64_t{1} << amb.size()) - 1;
        auto trials = run_trials(count, [&](std::uint64_t i) { return tiny_norm_trial(amb, i + 1); });
        std::size_t cosets = 0;
        double min_non_coset = kNoMargin;
        for (const Trial& t : trials) {
            if (t.record["coset"].get<bool>()) ++cosets;
            else min_non_coset = std::min(min_non_coset, t.record["a_norm"].get<double>());
        }
        if (dim >= 2) min_ok = min_ok && std::abs(min_non_coset - 1.5) <= 1e-9;
        per_dim.push_back({{"n", dim},
                           {"functions", count},
                           {"cosets", cosets},
                           {"min_non_coset_a_norm",
                            std::isfinite(min_non_coset) ? Json(min_non_coset) : Json(nullptr)}});
        all.insert(all.end(), std::make_move_iterator(trials.begin()),
                   std::make_move_iterator(trials.end()));
    }
    LawReport r = summarize("tiny-norm", n, 0, all, start);
    if (!min_ok) {
        ++r.failures;
        if (!r.counterexample) {
            r.counterexample = Json{{"law", "tiny-norm"}, {"check", "min non-coset a_norm = 3/2"},
                                    {"per_dim", per_dim}};
        }
    }
    r.stats = {{"per_dim", per_dim}};
    return r;
}

LawReport check_pd(int max_d, std::uint64_t points) {
    require_n(max_d, 0, 4, "pd");
    if (points < 2) throw InvalidArgument("pd needs at least 2 grid points");
    const auto start = Clock::now();
    static constexpr double kEps[] = {1e-1, 1e-2, 1e-3};
    auto trials = run_trials(static_cast<std::uint64_t>(max_d + 1), [&](std::uint64_t di) {
        const int d = static_cast<int>(di);
        Trial t;
        const double lo = -d - 0.5;
        const double span = 2.0 * d + 1.0;
        std::uint64_t evaluated = 0;
        for (std::uint64_t i = 0; i < points; ++i) {
            const double x = lo + span * static_cast<double>(i) / static_cast<double>(points - 1);
            const double p = std::abs(pd_eval(x, d));
            t.le(frac_dist(x), p, 1e-12 * std::max(1.0, p), "|P_d(t)| >= dist(t, Z)");
            if (t.failed && t.input.empty()) t.input = {{"d", d}, {"t", x}};
            ++evaluated;
        }
        const std::uint64_t per = std::max<std::uint64_t>(2, points / (3 * (2 * d + 1)));
        for (double eps : kEps) {
            for (int k = -d; k <= d; ++k) {
                for (std::uint64_t i = 0; i < per; ++i) {
                    const double x = k + eps * (2.0 * static_cast<double>(i) / static_cast<double>(per - 1) - 1.0);
                    if (std::abs(x) > d) continue;
                    const double p = std::abs(pd_eval(x, d));
                    const double bound = eps * std::pow(4.0, d);
                    t.le(p, bound, 1e-12 * std::max(1.0, bound), "|P_d(t)| <= eps 4^d");
                    if (t.failed && t.input.empty()) t.input = {{"d", d}, {"t", x}, {"eps", eps}};
                    ++evaluated;
                }
            }
        }
        t.record = {{"d", d}, {"evaluations", evaluated}};
        return t;
    });
    LawReport r = summarize("pd", max_d, 0, trials, start);
    std::uint64_t total = 0;
    for (const Trial& t : trials) total += t.record["evaluations"].get<std::uint64_t>();
    r.trials = total;
    r.stats = {{"evaluations", total}, {"grid_points_per_degree", points}};
    return r;
}

LawReport check_approx_hom(const LawOptions& o) {
    require_n(o.n, 1, 10, "approx-hom");
    const auto start = Clock::now();
    const Ambient amb(o.n);
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return approx_hom_trial(amb, rng);
    });
    LawReport r = summarize("approx-hom", o.n, o.seed, trials, start);
    std::size_t tight = 0;
    for (const Trial& t : trials) tight += t.record["eta"].get<double>() > 0.0;
    r.stats = {{"trials_with_positive_eta", tight}};
    return r;
}

LawReport check_power_bound(const LawOptions& o) {
    require_n(o.n, 1, 10, "power-bound");
    return seeded_law("power-bound", o, power_bound_trial);
}

LawReport check_spectral_support(const LawOptions& o) {
    require_n(o.n, 1, 10, "spectral-support");
    const auto start = Clock::now();
    const Ambient amb(o.n);
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return spectral_support_trial(amb, rng);
    });
    LawReport r = summarize("spectral-support", o.n, o.seed, trials, start);
    int max_steps = 0;
    for (const Trial& t : trials) max_steps = std::max(max_steps, t.record["steps"].get<int>());
    r.stats = {{"max_steps", max_steps}};
    return r;
}

LawReport check_bogolyubov(const LawOptions& o) {
    require_n(o.n, 2, 12, "bogolyubov");
    const auto start = Clock::now();
    const Ambient amb(o.n);
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return bogolyubov_trial(amb, rng);
    });
    LawReport r = summarize("bogolyubov", o.n, o.seed, trials, start);
    r.stats = {{"families", family_counts(trials)}};
    return r;
}

LawReport check_lemma13(const LawOptions& o) {
    require_n(o.n, 2, 12, "lemma13");
    return seeded_law("lemma13", o, lemma13_trial);
}

LawReport check_plunnecke(const LawOptions& o) {
    require_n(o.n, 1, 12, "plunnecke");
    const auto start = Clock::now();
    const Ambient amb(o.n);
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return plunnecke_trial(amb, rng);
    });
    LawReport r = summarize("plunnecke", o.n, o.seed, trials, start);
    r.stats = {{"families", family_counts(trials)}};
    return r;
}

LawReport check_lemma14(const LawOptions& o) {
    require_n(o.n, 2, 12, "lemma14");
    return seeded_law("lemma14", o, lemma14_trial);
}

LawReport chang_report(const LawOptions& o) {
    require_n(o.n, 1, 12, "chang-report");
    const auto start = Clock::now();
    const Ambient amb(o.n);
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return chang_trial(amb, rng);
    });
    LawReport r = summarize("chang-report", o.n, o.seed, trials, start);
    r.report_only = true;
    Json per_rho = Json::array();
    for (std::size_t row = 0; row < 2; ++row) {
        std::vector<double> ratios;
        for (const Trial& t : trials) ratios.push_back(t.record["rows"][row]["ratio"].get<double>());
        const double mx = ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
        per_rho.push_back({{"rho", trials.empty() ? 0.0 : trials[0].record["rows"][row]["rho"].get<double>()},
                           {"median_ratio", median(ratios)},
                           {"max_ratio", mx}});
    }
    r.stats = {{"dim_over_bound", per_rho}, {"families", family_counts(trials)}};
    return r;
}

LawReport check_connectedness(const LawOptions& o) {
    require_n(o.n, 2, 12, "connectedness");
    const auto start = Clock::now();
    const Ambient amb(o.n);
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return connectedness_trial(amb, rng);
    });
    LawReport r = summarize("connectedness", o.n, o.seed, trials, start);
    std::size_t connected = 0;
    for (const Trial& t : trials) connected += t.record["connected"].get<bool>();
    r.stats = {{"connected", connected},
               {"not_connected", trials.size() - connected},
               {"families", family_counts(trials)}};
    return r;
}

LawReport check_roundtrip(const LawOptions& o) {
    require_n(o.n, 1, 12, "roundtrip");
    const auto start = Clock::now();
    auto trials = run_trials(o.trials, [&](std::uint64_t i) {
        Rng rng(o.seed, i);
        return roundtrip_trial(o.n, rng);
    });
    LawReport r = summarize("roundtrip", o.n, o.seed, trials, start);
    std::vector<double> ls, trivial, ratios;
    std::size_t fallbacks = 0, singles = 0;
    for (const Trial& t : trials) {
        const auto l = t.record["L"].get<double>();
        const auto lt = t.record["L_trivial"].get<double>();
        ls.push_back(l);
        trivial.push_back(lt);
        if (lt > 0) ratios.push_back(l / lt);
        fallbacks += t.record["fallback"].get<bool>();
        singles += t.record["single_coset"].get<bool>();
    }
    const double med_ratio = median(ratios);
    r.stats = {{"median_L", median(ls)},
               {"median_L_trivial", median(trivial)},
               {"median_L_over_L_trivial", med_ratio},
               {"quality_target_met", med_ratio <= 0.25},
               {"fallback_instances", fallbacks},
               {"single_coset_instances", singles}};
    return r;
}

const std::vector<std::string>& law_ids() {
    static const std::vector<std::string> ids = {
        "tiny-norm", "pd",      "approx-hom", "power-bound", "spectral-support", "bogolyubov",
        "lemma13",   "plunnecke", "lemma14",  "chang-report", "connectedness",  "roundtrip"};
    return ids;
}

LawReport run_law(const std::string& id, const LawOptions& o) {
    if (id == "tiny-norm") return check_tiny_norm(o.n);
    if (id == "pd") return check_pd(o.n, o.trials);
    if (id == "approx-hom") return check_approx_hom(o);
    if (id == "power-bound") return check_power_bound(o);
    if (id == "spectral-support") return check_spectral_support(o);
    if (id == "bogolyubov") return check_bogolyubov(o);
    if (id == "lemma13") return check_lemma13(o);
    if (id == "plunnecke") return check_plunnecke(o);
    if (id == "lemma14") return check_lemma14(o);
    if (id == "chang-report") return chang_report(o);
    if (id == "connectedness") return check_connectedness(o);
    if (id == "roundtrip") return check_roundtrip(o);
    throw InvalidArgument("unknown law '" + id + "'");
}

}  // namespace specnorm
