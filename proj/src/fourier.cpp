#include "specnorm/fourier.hpp"

#include <algorithm>
#include <string>

#include "specnorm/error.hpp"
#include "specnorm/kernels.hpp"

namespace specnorm {

template <class Tag>
Dense<Tag>::Dense(Ambient ambient, std::vector<double> values)
    : ambient_(ambient), data_(std::move(values)) {
    if (data_.size() != ambient.size()) {
        throw InvalidArgument("table length " + std::to_string(data_.size()) +
                              " does not match 2^" + std::to_string(ambient.n()));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw InvalidArgument("table entry is not finite");
    }
}

template class Dense<FunctionTag>;
template class Dense<SpectrumTag>;

namespace {

void require_same(Ambient a, Ambient b) {
    if (a != b) throw AmbientMismatch();
}

template <class Op>
RealFn zip(const RealFn& a, const RealFn& b, Op op) {
    require_same(a.ambient(), b.ambient());
    RealFn out(a.ambient());
    auto o = out.values();
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = op(x[i], y[i]);
    return out;
}

}  // namespace

RealFn constant(Ambient ambient, double c) {
    return RealFn(ambient, std::vector<double>(ambient.size(), c));
}

RealFn coset_indicator(const Subgroup& h, Point t) {
    h.ambient().check(t);
    RealFn out(h.ambient());
    for (Point x : enumerate(h)) out[x ^ t] = 1.0;
    return out;
}

RealFn haar_measure(const Subgroup& h) {
    RealFn out(h.ambient());
    const double w = 1.0 / h.density();
    for (Point x : enumerate(h)) out[x] = w;
    return out;
}

RealFn point_mass(Ambient ambient, Point x) {
    ambient.check(x);
    RealFn out(ambient);
    out[x] = static_cast<double>(ambient.size());
    return out;
}

RealFn operator+(const RealFn& a, const RealFn& b) {
    return zip(a, b, [](double x, double y) { return x + y; });
}

RealFn operator-(const RealFn& a, const RealFn& b) {
    return zip(a, b, [](double x, double y) { return x - y; });
}

RealFn operator*(const RealFn& a, const RealFn& b) {
    return zip(a, b, [](double x, double y) { return x * y; });
}

RealFn operator*(double c, const RealFn& a) {
    RealFn out = a;
    for (double& v : out.values()) v *= c;
    return out;
}

RealFn power(const RealFn& f, int k) {
    if (k < 0) throw InvalidArgument("power exponent must be >= 0");
    RealFn out = constant(f.ambient(), 1.0);
    for (int i = 0; i < k; ++i) out = out * f;
    return out;
}

Spectrum wht(const RealFn& f) {
    std::vector<double> buf(f.values().begin(), f.values().end());
    kernels::butterfly(std::span<double>(buf));
    kernels::scale(buf, std::ldexp(1.0, -f.ambient().n()));
    return Spectrum(f.ambient(), std::move(buf));
}

RealFn iwht(const Spectrum& s) {
    std::vector<double> buf(s.values().begin(), s.values().end());
    kernels::butterfly(std::span<double>(buf));
    return RealFn(s.ambient(), std::move(buf));
}

RealFn convolve(const RealFn& f, const RealFn& g) {
    require_same(f.ambient(), g.ambient());
    Spectrum fs = wht(f);
    const Spectrum gs = wht(g);
    for (Point r = 0; r < fs.size(); ++r) fs[r] *= gs[r];
    return iwht(fs);
}

namespace {

double pnorm_sum(std::span<const double> v, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("norm exponent p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 1.0) return kernels::abs_sum(v);
    if (p == 2.0) return kernels::dot(v, v);
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return s;
}

}  // namespace

double lp_norm(const RealFn& f, double p) {
    const double s = pnorm_sum(f.values(), p);
    if (std::isinf(p)) return s;
    return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

double spec_lp_norm(const Spectrum& s, double p) {
    const double t = pnorm_sum(s.values(), p);
    if (std::isinf(p) || p == 1.0) return t;
    return std::pow(t, 1.0 / p);
}

double inner(const RealFn& f, const RealFn& g) {
    require_same(f.ambient(), g.ambient());
    return kernels::dot(f.values(), g.values()) / static_cast<double>(f.size());
}

double spec_inner(const Spectrum& s, const Spectrum& t) {
    require_same(s.ambient(), t.ambient());
    return kernels::dot(s.values(), t.values());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace specnorm
