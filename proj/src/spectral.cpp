#include "specnorm/spectral.hpp"

#include <algorithm>
#include <string>

#include "specnorm/error.hpp"
#include "specnorm/kernels.hpp"

namespace specnorm {

double a_norm(const RealFn& f) {
    return spec_lp_norm(wht(f), 1.0);
}

std::vector<Point> coset_reps(const Subgroup& h) {
    const Point pivots = h.pivot_mask();
    std::vector<Point> reps;
    reps.reserve(h.ambient().size() >> h.dim());
    for (Point x = 0; x <= h.ambient().mask(); ++x) {
        if ((x & pivots) == 0) reps.push_back(x);
    }
    return reps;
}

RealFn psi(const RealFn& f, const Subgroup& h) {
    if (f.ambient() != h.ambient()) throw AmbientMismatch();
    const std::vector<Point> reps = coset_reps(h);
    const std::vector<Point> elems = enumerate(h);
    const double inv = 1.0 / static_cast<double>(elems.size());
    RealFn out(f.ambient());
    const bool par = kernels::use_parallel(f.size());
#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(reps.size()); ++i) {
        const Point rep = reps[static_cast<std::size_t>(i)];
        double sum = 0.0;
        for (Point e : elems) sum += f[rep ^ e];
        const double avg = sum * inv;
        for (Point e : elems) out[rep ^ e] = avg;
    }
    return out;
}

std::vector<double> dual_coset_masses(const Spectrum& s, const Subgroup& dual) {
    if (s.ambient() != dual.ambient()) throw AmbientMismatch();
    const std::vector<Point> reps = coset_reps(dual);
    const std::vector<Point> elems = enumerate(dual);
    std::vector<double> mass(reps.size());
    const bool par = kernels::use_parallel(s.size());
#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(reps.size()); ++i) {
        const Point rep = reps[static_cast<std::size_t>(i)];
        double sum = 0.0;
        for (Point e : elems) sum += std::abs(s[rep ^ e]);
        mass[static_cast<std::size_t>(i)] = sum;
    }
    return mass;
}

double coset_spectral_mass(const RealFn& f, const Subgroup& h, Point r) {
    f.ambient().check(r);
    const Spectrum s = wht(f);
    const Subgroup dual = annihilator(h);
    double sum = 0.0;
    for (Point e : enumerate(dual)) sum += std::abs(s[r ^ e]);
    return sum;
}

namespace {

// Heaviest coset of `dual` other than dual itself. Reps are ascending, so the
// strict comparison keeps the smallest word on ties.
SupportCheck heaviest_offcoset(const Spectrum& s, const Subgroup& dual, double eta) {
    const std::vector<Point> reps = coset_reps(dual);
    const std::vector<double> mass = dual_coset_masses(s, dual);
    SupportCheck out;
    bool found = false;
    for (std::size_t i = 1; i < reps.size(); ++i) {
        if (!found || mass[i] > out.worst_mass) {
            out.worst_mass = mass[i];
            out.witness = reps[i];
            found = true;
        }
    }
    out.supported = out.worst_mass <= eta;
    return out;
}

}  // namespace

SupportCheck is_spectrally_supported(const Spectrum& s, const Subgroup& h, double eta) {
    if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
    if (s.ambient() != h.ambient()) throw AmbientMismatch();
    return heaviest_offcoset(s, annihilator(h), eta);
}

SupportCheck is_spectrally_supported(const RealFn& f, const Subgroup& h, double eta) {
    return is_spectrally_supported(wht(f), h, eta);
}

double measured_eta(const Spectrum& s, const Subgroup& h) {
    if (s.ambient() != h.ambient()) throw AmbientMismatch();
    return heaviest_offcoset(s, annihilator(h), 0.0).worst_mass;
}

double measured_eta(const RealFn& f, const Subgroup& h) {
    return measured_eta(wht(f), h);
}

std::vector<SupportCertificate> spectral_support_chain(const Spectrum& s, const Subgroup& h,
                                                       double eta_floor) {
    if (!(eta_floor > 0.0)) throw InvalidArgument("eta must be positive");
    if (s.ambient() != h.ambient()) throw AmbientMismatch();
    std::vector<SupportCertificate> chain;
    Subgroup dual = annihilator(h);
    int steps = 0;
    for (;;) {
        const SupportCheck check = heaviest_offcoset(s, dual, eta_floor);
        chain.push_back({annihilator(dual), check.worst_mass, check.witness, check.worst_mass,
                         steps});
        if (check.supported) break;
        dual = extend(dual, check.witness);
        ++steps;
    }
    return chain;
}

SupportCertificate find_spectral_support(const Spectrum& s, const Subgroup& h, double eta) {
    SupportCertificate cert = spectral_support_chain(s, h, eta).back();
    cert.eta = eta;
    return cert;
}

SupportCertificate find_spectral_support(const RealFn& f, const Subgroup& h, double eta) {
    return find_spectral_support(wht(f), h, eta);
}

double approx_hom_defect(const RealFn& f, const RealFn& g, const Subgroup& h) {
    return a_norm(psi(f * g, h) - psi(f, h) * psi(g, h));
}

double pd_eval(double t, int d) {
    if (d < 0 || d > kMaxPdDegree) {
        throw InvalidArgument("P_d degree must lie in [0, 12], got " + std::to_string(d));
    }
    // 4^d / (2d)!, accumulated as a product of ratios to stay in range.
    double coeff = 1.0;
    for (int k = 1; k <= 2 * d; ++k) coeff *= 2.0 / k;
    double prod = coeff;
    for (int j = -d; j <= d; ++j) prod *= (t - j);
    return prod;
}

RealFn pd_apply(const RealFn& f, int d) {
    pd_eval(0.0, d);
    RealFn out(f.ambient());
    for (Point x = 0; x < f.size(); ++x) out[x] = pd_eval(f[x], d);
    return out;
}

double frac_dist(double t) {
    return std::abs(t - std::nearbyint(t));
}

AlmostIntFn round_to_int(const RealFn& f) {
    RealFn rounded(f.ambient());
    double eps = 0.0;
    for (Point x = 0; x < f.size(); ++x) {
        const double k = std::nearbyint(f[x]);
        const double dev = std::abs(f[x] - k);
        if (dev >= 0.5 - kRoundGuard) {
            throw NotAlmostInteger("value " + std::to_string(f[x]) + " at " + to_hex(x) +
                                   " is not within 1/2 of an integer");
        }
        rounded[x] = k;
        eps = std::max(eps, dev);
    }
    return {f, std::move(rounded), eps};
}

}  // namespace specnorm
