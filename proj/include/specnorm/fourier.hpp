#pragma once

// Dense functions on F_2^n and their Walsh-Hadamard spectra.
//
//   fhat(r) = E_x f(x) (-1)^{r.x}     (probability measure on G)
//   f(x)    = sum_r fhat(r) (-1)^{r.x} (counting measure on the dual)
//
// With this normalisation the E-convolution satisfies (f*g)^ = fhat * ghat
// and Plancherel reads E f g = sum_r fhat(r) ghat(r).

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "specnorm/gf2.hpp"

namespace specnorm {

/// A dense table of 2^n finite doubles indexed by Point. Tag separates
/// functions on G from tables on the dual group.
template <class Tag>
class Dense {
public:
    explicit Dense(Ambient ambient) : ambient_(ambient), data_(ambient.size(), 0.0) {}
    Dense(Ambient ambient, std::vector<double> values);

    Ambient ambient() const noexcept { return ambient_; }
    std::size_t size() const noexcept { return data_.size(); }

    double operator[](Point x) const noexcept { return data_[x]; }
    double& operator[](Point x) noexcept { return data_[x]; }

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    friend bool operator==(const Dense&, const Dense&) = default;

private:
    Ambient ambient_;
    std::vector<double> data_;
};

struct FunctionTag;
struct SpectrumTag;

using RealFn = Dense<FunctionTag>;
using Spectrum = Dense<SpectrumTag>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// --- construction helpers -------------------------------------------------

RealFn constant(Ambient ambient, double c);
/// 1_{t + H}.
RealFn coset_indicator(const Subgroup& h, Point t = 0);
/// 1_H / E 1_H.
RealFn haar_measure(const Subgroup& h);
/// |G| * delta_x, so that E_y f(y) delta_x(y) = f(x).
RealFn point_mass(Ambient ambient, Point x);

// --- pointwise algebra ----------------------------------------------------

RealFn operator+(const RealFn& a, const RealFn& b);
RealFn operator-(const RealFn& a, const RealFn& b);
/// Pointwise product.
RealFn operator*(const RealFn& a, const RealFn& b);
RealFn operator*(double c, const RealFn& a);
/// Pointwise power f^k, k >= 0.
RealFn power(const RealFn& f, int k);

// --- transforms -----------------------------------------------------------

Spectrum wht(const RealFn& f);
RealFn iwht(const Spectrum& s);
/// E-normalised convolution (f*g)(x) = E_y f(y) g(x - y).
RealFn convolve(const RealFn& f, const RealFn& g);

// --- norms and inner products ---------------------------------------------

/// (E |f|^p)^{1/p}; p = kInf gives the sup norm. Throws for p < 1.
double lp_norm(const RealFn& f, double p);
/// (sum_r |s(r)|^p)^{1/p}; p = kInf gives max |s(r)|. Throws for p < 1.
double spec_lp_norm(const Spectrum& s, double p);
/// E f g.
double inner(const RealFn& f, const RealFn& g);
/// sum_r s(r) t(r).
double spec_inner(const Spectrum& s, const Spectrum& t);

double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace specnorm
