#pragma once

// Rewrites an integer-valued (or almost integer-valued) function on F_2^n as
// a signed sum of subgroup indicators by repeatedly splitting
//
//     f = psi_{H'} f + (f - psi_{H'} f)
//
// where H' is found by first locating a subgroup H on which f concentrates
// and then descending to a subgroup on which f is spectrally supported. The
// two pieces have disjoint spectral supports, so their spectral norms add up
// to that of f, and the unfinished piece loses at least 1/2 of norm.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specnorm/additive.hpp"
#include "specnorm/fourier.hpp"
#include "specnorm/gf2.hpp"
#include "specnorm/spectral.hpp"

namespace specnorm {

struct SubgroupTerm {
    int sign;
    Subgroup subgroup;
    friend bool operator==(const SubgroupTerm&, const SubgroupTerm&) = default;
};

/// sum_j sign_j 1_{H_j}.
struct CosetRingExpr {
    Ambient ambient;
    std::vector<SubgroupTerm> terms;

    std::size_t length() const noexcept { return terms.size(); }
};

/// coeff * 1_{rep + H}.
struct SignedCosetTerm {
    std::int64_t coeff;
    Point rep;
    Subgroup subgroup;
};

enum class DecomposeMode { heuristic, exhaustive, fallback_only };

DecomposeMode parse_mode(const std::string& name);
std::string to_string(DecomposeMode mode);

/// eps / (16 (M + 1)^2 max(1, log2(M + 1)))
double default_eta_schedule(double eps, double m);

struct DecomposeParams {
    /// Maximum almost-integer deviation accepted on input.
    double eps0 = 0x1p-20;
    /// Finest spectral-support parameter tried for a part with norm M.
    std::function<double(double eps, double m)> eta_of = default_eta_schedule;
    DecomposeMode mode = DecomposeMode::heuristic;
    int max_depth = 64;
    /// Recorded for reproducibility; the engine itself is deterministic.
    std::uint64_t seed = 0;
    /// When a part stalls: express it point by point (true) or leave the
    /// decomposition incomplete (false).
    bool allow_fallback = true;
    ConcentrationParams concentration;
};

enum class PartStatus { finished, unfinished };

struct SplitOutcome {
    /// Set when f_Z = 0 (in particular when ||f||_A <= 1/2); no split happens.
    bool trivially_finished = false;
    Subgroup concentration;
    SupportCertificate support;
    AlmostIntFn f1;
    AlmostIntFn f2;
    PartStatus status1;
    PartStatus status2;
    double a_norm_before;
    double a_norm_f1;
    double a_norm_f2;
};

/// One split of f along psi_{H'}, H' = find_spectral_support(f, H, eta) with
/// H = h_hint or the concentration subgroup. Both pieces are re-rounded; the
/// roundings must add up to f_Z. Throws NotAlmostInteger if either piece is
/// not almost integer-valued or the roundings disagree with f_Z.
SplitOutcome inductive_step(const AlmostIntFn& f, double eta, const Subgroup* h_hint = nullptr,
                            const ConcentrationParams& params = {});

/// Same split against an explicit H' (the chain entry the caller picked).
SplitOutcome split_along(const AlmostIntFn& f, const Subgroup& concentration,
                         const SupportCertificate& support);

/// True iff g is constant on every coset of H.
bool constant_on_cosets(const RealFn& g, const Subgroup& h);

/// Nonzero coset values of an integer function constant on cosets of H.
std::vector<SignedCosetTerm> extract_coset_terms(const RealFn& f_int, const Subgroup& h);

/// 1_{x+H} = 1_{<H,x>} - 1_H when x is not in H.
std::vector<SubgroupTerm> coset_to_subgroups(const SignedCosetTerm& term);

/// Point-by-point representation of an integer function.
CosetRingExpr trivial_expr(const RealFn& f_int);

/// Cancels +1_H / -1_H pairs; keeps first-appearance order.
CosetRingExpr simplify(const CosetRingExpr& expr);

RealFn evaluate(const CosetRingExpr& expr);

struct SplitRecord {
    double a_norm_before;
    double a_norm_f1;
    double a_norm_f2;
    /// Measured spectral-support parameter of the chosen H'.
    double eta;
    /// Almost-integer deviation of the part being split.
    double eps_level;
    int codim_concentration;
    int codim_support;
    /// Position of the chosen H' on the greedy descent (0 = H itself).
    int chain_index;
    bool f2_finished;
    int depth;
};

struct DecomposeReport {
    std::size_t length = 0;
    std::size_t trivial_length = 0;
    int depth = 0;
    std::vector<SplitRecord> splits;
    bool fallback_used = false;
    int fallback_parts = 0;
    /// Parts left unexpressed because fallback was disabled.
    int stalled_parts = 0;
    bool exact = false;
    double a_norm = 0.0;
    double input_eps = 0.0;
};

struct Decomposition {
    CosetRingExpr expr;
    DecomposeReport report;
    /// Integer rounding of the input.
    RealFn target;
};

/// Throws NotAlmostInteger unless f rounds with deviation <= params.eps0.
Decomposition decompose(const RealFn& f, const DecomposeParams& params = {});

}  // namespace specnorm
