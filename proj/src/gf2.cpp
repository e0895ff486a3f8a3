#include "specnorm/gf2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>

#include "specnorm/error.hpp"

namespace specnorm {

Ambient::Ambient(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) {
        throw InvalidArgument("dimension n must lie in [1, 24], got " + std::to_string(n));
    }
}

void Ambient::check(Point x) const {
    if (!holds(x)) {
        throw InvalidArgument("point " + to_hex(x) + " outside F_2^" + std::to_string(n_));
    }
}

Subgroup Subgroup::full(Ambient ambient) {
    std::vector<Point> gens(ambient.n());
    for (int i = 0; i < ambient.n(); ++i) gens[i] = Point{1} << i;
    return rref_span(ambient, gens);
}

double Subgroup::density() const noexcept {
    return std::ldexp(1.0, -codim());
}

Point Subgroup::reduce(Point x) const noexcept {
    // Basis is sorted by descending pivot, so one pass clears every pivot bit.
    for (Point b : basis_) {
        if (x >> pivot_of(b) & 1) x ^= b;
    }
    return x;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const noexcept {
    if (ambient_ != other.ambient_ || dim() > other.dim()) return false;
    return std::all_of(basis_.begin(), basis_.end(),
                       [&](Point b) { return other.contains(b); });
}

Subgroup rref_span(Ambient ambient, std::span<const Point> generators) {
    // by_pivot[p] holds the basis word with pivot p, or 0.
    std::array<Point, kMaxDim> by_pivot{};
    for (Point g : generators) {
        ambient.check(g);
        Point x = g;
        while (x != 0) {
            const int p = pivot_of(x);
            if (by_pivot[p] == 0) {
                by_pivot[p] = x;
                break;
            }
            x ^= by_pivot[p];
        }
    }
    // Back-substitute so each pivot bit appears in exactly one word.
    for (int p = 0; p < ambient.n(); ++p) {
        if (by_pivot[p] == 0) continue;
        for (int q = p + 1; q < ambient.n(); ++q) {
            if (by_pivot[q] >> p & 1) by_pivot[q] ^= by_pivot[p];
        }
    }
    Subgroup h(ambient);
    for (int p = ambient.n() - 1; p >= 0; --p) {
        if (by_pivot[p] != 0) {
            h.basis_.push_back(by_pivot[p]);
            h.pivots_ |= Point{1} << p;
        }
    }
    return h;
}

Subgroup extend(const Subgroup& h, Point x) {
    std::vector<Point> gens(h.basis().begin(), h.basis().end());
    gens.push_back(x);
    return rref_span(h.ambient(), gens);
}

bool contains(const Subgroup& h, Point x) {
    h.ambient().check(x);
    return h.contains(x);
}

Subgroup annihilator(const Subgroup& h) {
    const Ambient amb = h.ambient();
    std::vector<Point> gens;
    gens.reserve(h.codim());
    // For each free coordinate j: e_j plus e_{pivot(b)} for every basis word b
    // carrying bit j. Pairs to zero with every basis word.
    for (int j = 0; j < amb.n(); ++j) {
        if (h.pivot_mask() >> j & 1) continue;
        Point r = Point{1} << j;
        for (Point b : h.basis()) {
            if (b >> j & 1) r |= Point{1} << pivot_of(b);
        }
        gens.push_back(r);
    }
    return rref_span(amb, gens);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatch();
    const Subgroup pa = annihilator(a);
    const Subgroup pb = annihilator(b);
    std::vector<Point> gens(pa.basis().begin(), pa.basis().end());
    gens.insert(gens.end(), pb.basis().begin(), pb.basis().end());
    return annihilator(rref_span(a.ambient(), gens));
}

std::vector<Point> enumerate(const Subgroup& h) {
    const std::size_t count = h.size();
    std::vector<Point> out(count);
    Point x = 0;
    out[0] = 0;
    for (std::size_t i = 1; i < count; ++i) {
        x ^= h.basis()[std::countr_zero(i)];
        out[i] = x;
    }
    return out;
}

std::strong_ordering canonical_order(const Subgroup& a, const Subgroup& b) {
    if (a.dim() != b.dim()) return b.dim() <=> a.dim();
    return std::lexicographical_compare_three_way(a.basis().begin(), a.basis().end(),
                                                  b.basis().begin(), b.basis().end());
}

std::string to_hex(Point x) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%x", x);
    return buf;
}

Point parse_hex(const std::string& s) {
    std::size_t pos = 0;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) pos = 2;
    if (pos == s.size()) throw InvalidArgument("empty hex literal: '" + s + "'");
    unsigned long long v = 0;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw InvalidArgument("bad hex literal: '" + s + "'");
        v = v * 16 + d;
        if (v > 0xffffffffULL) throw InvalidArgument("hex literal too large: '" + s + "'");
    }
    return static_cast<Point>(v);
}

}  // namespace specnorm
