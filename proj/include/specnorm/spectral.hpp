#pragma once

// The psi_H projection calculus: spectral norm, coset averaging, spectral
// support and its greedy finder, the approximate homomorphism defect, the
// P_d polynomials and almost-integer rounding.

#include <vector>

#include "specnorm/fourier.hpp"
#include "specnorm/gf2.hpp"

namespace specnorm {

/// ||f||_A = sum_r |fhat(r)|.
double a_norm(const RealFn& f);

/// Smallest word of every coset of H, ascending.
std::vector<Point> coset_reps(const Subgroup& h);

/// (psi_H f)(x) = E_{y in x+H} f(y). Constant on cosets of H; its spectrum
/// is fhat restricted to H^perp.
RealFn psi(const RealFn& f, const Subgroup& h);

/// sum of |fhat| over r + H^perp.
double coset_spectral_mass(const RealFn& f, const Subgroup& h, Point r);

/// Mass of every coset of the dual subgroup `dual`, indexed by coset_reps(dual).
std::vector<double> dual_coset_masses(const Spectrum& s, const Subgroup& dual);

struct SupportCheck {
    bool supported = true;
    /// Smallest word of the heaviest coset other than H^perp; 0 if none.
    Point witness = 0;
    double worst_mass = 0.0;
};

/// f is eta-spectrally supported on H iff every coset of H^perp other than
/// H^perp itself carries at most eta of |fhat|.
SupportCheck is_spectrally_supported(const RealFn& f, const Subgroup& h, double eta);
SupportCheck is_spectrally_supported(const Spectrum& s, const Subgroup& h, double eta);

/// The smallest eta for which f is eta-spectrally supported on H.
double measured_eta(const RealFn& f, const Subgroup& h);
double measured_eta(const Spectrum& s, const Subgroup& h);

struct SupportCertificate {
    Subgroup subgroup;
    double eta;
    Point worst_coset_rep;
    double worst_mass;
    int steps_used;
};

/// Greedy descent H = H_0 > H_1 > ... : while some coset r + H_i^perp outside
/// H_i^perp has mass > eta, adjoin the heaviest such r (ties: smallest word)
/// to the dual. Terminates with codim(H : H') = steps_used <= ceil(||f||_A/eta).
SupportCertificate find_spectral_support(const RealFn& f, const Subgroup& h, double eta);
SupportCertificate find_spectral_support(const Spectrum& s, const Subgroup& h, double eta);

/// Every subgroup visited by the greedy descent down to eta_floor, coarsest
/// first; entry i is the subgroup after i steps with its heaviest off-coset
/// mass. find_spectral_support(eta) is the first entry with worst_mass <= eta.
std::vector<SupportCertificate> spectral_support_chain(const Spectrum& s, const Subgroup& h,
                                                       double eta_floor);

/// ||psi_H(fg) - psi_H(f) psi_H(g)||_A.
double approx_hom_defect(const RealFn& f, const RealFn& g, const Subgroup& h);

inline constexpr int kMaxPdDegree = 12;

/// P_d(t) = 4^d / (2d)! * prod_{j=-d}^{d} (t - j), product form.
double pd_eval(double t, int d);
RealFn pd_apply(const RealFn& f, int d);

/// Distance from t to the nearest integer.
double frac_dist(double t);

/// Values at distance >= 1/2 - kRoundGuard from every integer are rejected.
inline constexpr double kRoundGuard = 1e-9;

/// A real function together with its pointwise integer rounding.
struct AlmostIntFn {
    RealFn f;
    RealFn f_int;
    /// ||f - f_int||_inf
    double eps;
};

/// Throws NotAlmostInteger if some value is not within 1/2 - kRoundGuard of
/// an integer.
AlmostIntFn round_to_int(const RealFn& f);

}  // namespace specnorm
