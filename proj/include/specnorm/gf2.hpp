#pragma once

// Linear algebra over F_2 on n-bit words. The dual group is represented with
// the same Point/Subgroup types: frequency r pairs with x through
// parity(r & x).

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace specnorm {

using Point = std::uint32_t;

inline constexpr int kMaxDim = 24;

/// The group F_2^n, 1 <= n <= 24.
class Ambient {
public:
    explicit Ambient(int n);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return std::size_t{1} << n_; }
    Point mask() const noexcept { return static_cast<Point>(size() - 1); }
    bool holds(Point x) const noexcept { return x <= mask(); }

    /// Throws InvalidArgument unless x < 2^n.
    void check(Point x) const;

    friend bool operator==(Ambient, Ambient) = default;

private:
    int n_;
};

inline int parity(Point x) noexcept { return std::popcount(x) & 1; }
inline int dot(Point r, Point x) noexcept { return parity(r & x); }
inline int pivot_of(Point word) noexcept { return std::bit_width(word) - 1; }

/// A subgroup of F_2^n stored as a reduced row-echelon basis: every basis
/// word has its pivot at its highest set bit, each pivot bit is clear in all
/// other basis words, and the basis is sorted descending. Two subgroups are
/// equal as sets iff their bases are identical.
class Subgroup {
public:
    /// Trivial subgroup {0}.
    explicit Subgroup(Ambient ambient) : ambient_(ambient) {}

    static Subgroup trivial(Ambient ambient) { return Subgroup(ambient); }
    static Subgroup full(Ambient ambient);

    Ambient ambient() const noexcept { return ambient_; }
    int dim() const noexcept { return static_cast<int>(basis_.size()); }
    int codim() const noexcept { return ambient_.n() - dim(); }
    std::span<const Point> basis() const noexcept { return basis_; }
    std::size_t size() const noexcept { return std::size_t{1} << dim(); }
    /// E 1_H = |H| / |G|.
    double density() const noexcept;
    /// OR of all pivot bits.
    Point pivot_mask() const noexcept { return pivots_; }

    /// Canonical coset representative: x with every pivot bit cleared. This
    /// is the smallest word of x + H.
    Point reduce(Point x) const noexcept;
    bool contains(Point x) const noexcept { return reduce(x) == 0; }
    bool is_subgroup_of(const Subgroup& other) const noexcept;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    friend Subgroup rref_span(Ambient, std::span<const Point>);
    Ambient ambient_;
    std::vector<Point> basis_;
    Point pivots_ = 0;
};

/// Canonical subgroup spanned by the generators.
Subgroup rref_span(Ambient ambient, std::span<const Point> generators);
inline Subgroup rref_span(Ambient ambient, std::initializer_list<Point> generators) {
    return rref_span(ambient, std::span<const Point>(generators.begin(), generators.size()));
}

/// span(H u {x}).
Subgroup extend(const Subgroup& h, Point x);

bool contains(const Subgroup& h, Point x);

/// H^perp = { r : parity(r & h) = 0 for all h in H }.
Subgroup annihilator(const Subgroup& h);

Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// All 2^dim elements in Gray-code order over the basis, starting at 0.
std::vector<Point> enumerate(const Subgroup& h);

/// Total order used for deterministic tie-breaking: larger subgroups first,
/// then lexicographic by basis.
std::strong_ordering canonical_order(const Subgroup& a, const Subgroup& b);

/// Enumerates every subgroup of dimension exactly k (reduced echelon forms).
/// The callback receives each canonical basis once.
template <class Fn>
void for_each_subgroup_of_dim(Ambient ambient, int k, Fn&& fn);

std::string to_hex(Point x);
Point parse_hex(const std::string& s);

}  // namespace specnorm

#include "specnorm/detail/gf2_enum.hpp"
