#pragma once

// Set machinery on F_2^n: sumsets and doubling, the fourfold autoconvolution
// nu4 and its level sets S_eta, large spectra, Bogolyubov subgroups,
// arithmetic connectedness, and the search for a subgroup on which a
// function concentrates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specnorm/fourier.hpp"
#include "specnorm/gf2.hpp"
#include "specnorm/spectral.hpp"

namespace specnorm {

/// Subset of F_2^n stored as a bitset.
class PointSet {
public:
    explicit PointSet(Ambient ambient);
    static PointSet from_members(Ambient ambient, std::span<const Point> members);
    static PointSet full(Ambient ambient);
    static PointSet of_subgroup(const Subgroup& h, Point offset = 0);
    /// { x : f(x) != 0 }.
    static PointSet support(const RealFn& f);

    Ambient ambient() const noexcept { return ambient_; }
    bool contains(Point x) const noexcept { return bits_[x >> 6] >> (x & 63) & 1; }
    void insert(Point x);
    void erase(Point x);
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    /// E 1_A.
    double density() const noexcept;

    /// Members in ascending order.
    std::vector<Point> members() const;
    RealFn indicator() const;
    bool is_subset_of(const PointSet& other) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    Ambient ambient_;
    std::vector<std::uint64_t> bits_;
    std::size_t count_ = 0;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);

/// #{(a, b) in A x B : a + b = x} for every x, computed exactly.
std::vector<std::int64_t> sum_counts(const PointSet& a, const PointSet& b);

PointSet sumset(const PointSet& a, const PointSet& b);
/// A + ... + A (k copies), k >= 1.
PointSet iterated(const PointSet& a, int k);

struct SetStats {
    /// E 1_A
    double alpha;
    /// E 1_{A+A} / E 1_A
    double doubling;
};
SetStats set_stats(const PointSet& a);

/// Number of quadruples (a1, a2, a3, a4) in A^4 with a1 + a2 + a3 + a4 = x.
/// Exact (128-bit accumulation); nu4(x) = count(x) / |G|^3.
std::vector<__int128> quadruple_counts(const PointSet& a);

/// nu4 = 1_A * 1_A * 1_A * 1_A (E-normalised convolution).
RealFn nu4(const PointSet& a);

/// S_eta = { x : nu4(x) >= eta alpha^3 }, evaluated on exact counts.
PointSet s_eta(const PointSet& a, double eta);
/// Same, reusing precomputed quadruple counts.
PointSet s_eta(const std::vector<__int128>& counts, const PointSet& a, double eta);

/// Spec_rho(A) = { r : |1_A^(r)| >= rho alpha }, 0 < rho <= 1.
PointSet spec_set(const PointSet& a, double rho);

/// Spec_rho(A)^perp.
Subgroup bogolyubov_subgroup(const PointSet& a, double rho);

/// Number of solutions of x1 + x2 = x3 + x4 in A^4.
std::int64_t additive_energy(const PointSet& a);

struct ConnectednessResult {
    bool connected = true;
    /// On failure: m distinct independent elements with no further element
    /// of A in their span.
    std::vector<Point> witness;
    std::uint64_t tuples_examined = 0;
};

inline constexpr std::uint64_t kConnectednessBudget = 10'000'000;

/// Exhaustive m-arithmetic-connectedness test. Throws ZeroInSet if 0 in A and
/// SearchBudgetExceeded when C(|A|, m) exceeds the budget.
ConnectednessResult is_arithmetically_connected(const PointSet& a, int m,
                                                std::uint64_t budget = kConnectednessBudget);

struct ConcentrationParams {
    /// Minimum E 1_H. Unset: ||f_Z||_1 / (8 (M + 1)) clamped into [2^-n, 1].
    std::optional<double> density_floor;
    /// A candidate is "good" when its score exceeds this plus the input's eps.
    double good_score = 0.5;
    int top_frequencies = 16;
    int max_subset = 4;
    int beam_width = 8;
    /// Enable the exhaustive stage over all subgroups of codim <= max_codim.
    bool exhaustive = false;
    int max_codim = 2;
    /// The exhaustive stage only runs for n at most this.
    int exhaustive_max_n = 10;
};

struct ConcentrationResult {
    Subgroup subgroup;
    /// ||psi_H f||_inf
    double score;
    /// Which stage produced the winner: bogolyubov, beam, exhaustive, trivial.
    std::string stage;
};

/// ||psi_{V^perp} f||_inf computed from the spectrum restricted to V.
double concentration_score(const Spectrum& s, const Subgroup& dual);

/// Looks for a subgroup H with E 1_H above the density floor on which f has a
/// large coset average. Among candidates scoring above the good threshold the
/// largest subgroup wins; otherwise the highest score. Ties fall back to
/// canonical_order. Always returns something: the trivial subgroup scores
/// ||f||_inf.
ConcentrationResult find_concentration_subgroup(const AlmostIntFn& f,
                                                const ConcentrationParams& params = {});

}  // namespace specnorm
