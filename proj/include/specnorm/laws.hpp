#pragma once

// Executable checks of the quantitative statements behind the library.
// Exhaustive where the instance space is small, seeded random trials
// elsewhere. Trial i of a run with seed s draws from Rng(s, i), so a report
// is reproducible from (law, n, trials, seed) whatever the thread count.
//
// Margins are (bound + tolerance) - measured; a negative margin is a failure.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specnorm/io.hpp"

namespace specnorm {

struct LawReport {
    std::string law_id;
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double worst_margin = 0.0;
    /// First failing trial (lowest index); present iff failures > 0.
    std::optional<Json> counterexample;
    double elapsed_seconds = 0.0;
    Json stats = Json::object();
    /// Statistics only; never fails.
    bool report_only = false;

    bool passed() const noexcept { return report_only || failures == 0; }
};

/// Everything except elapsed_seconds, so equal runs give equal JSON.
Json to_json(const LawReport& r);

struct LawOptions {
    int n = 8;
    std::uint64_t trials = 200;
    std::uint64_t seed = 1;
};

/// All nonzero boolean functions for every dimension 1..n (n <= 4): coset
/// indicator <=> a_norm <= 1 <=> closed under parallelograms, otherwise
/// a_norm >= 3/2 with the phi certificate. trials is ignored.
LawReport check_tiny_norm(int n);

/// |P_d(t)| >= dist(t, Z) on a grid of `points` values of t in
/// [-d - 1/2, d + 1/2], and |P_d(t)| <= eps 4^d for t within eps of an
/// integer with |t| <= d, for every d in 0..max_d.
LawReport check_pd(int max_d = 4, std::uint64_t points = 10'000);

/// defect(f, g, H) <= eta a_norm(g), eta the measured support parameter.
LawReport check_approx_hom(const LawOptions& o);

/// a_norm(psi(f^k) - psi(f)^k) <= eta (k - 1) M^(k - 1) for k = 2..5.
LawReport check_power_bound(const LawOptions& o);

/// Greedy support search: steps <= ceil(M / eta), H' <= H with
/// codim(H : H') = steps, and the certificate re-validates.
LawReport check_spectral_support(const LawOptions& o);

/// S_delta + H subset of S_(delta - eps), H = Spec_rho(A)^perp with
/// rho = sqrt(eps / 2), for (delta, eps) in {(1/2, 1/4), (3/4, 1/2)}.
LawReport check_bogolyubov(const LawOptions& o);

/// With K the doubling of A and eta = 1 / 2K^4: E 1_{S_eta} >= alpha / 2 and
/// max 1_A * 1_{S_eta} >= eta alpha / 2.
LawReport check_lemma13(const LawOptions& o);

/// E 1_{4A} <= K^4 alpha.
LawReport check_plunnecke(const LawOptions& o);

/// eta0 = 1/2K^4, eps = 1/64K^12, rho = 1/16K^6: some level j < 1/4K^4 eps
/// has a thin layer, and S_(eta0 - (j+1) eps) is a union of cosets of
/// Spec_rho(A)^perp up to a set of density <= alpha / 16K^4.
LawReport check_lemma14(const LawOptions& o);

/// dim span Spec_rho(A) against rho^-2 (1 + ln(1/alpha)). Report only.
LawReport chang_report(const LawOptions& o);

/// For sets with 0 not in A and m in {2, 3, 4}: a witness of
/// non-connectedness spans V with a_norm(1_A 1_V) >= sqrt(m / 3); a
/// connected set with |A| >= m^2 has some r in [3, m + 1] with
/// R_r(0) >= |A|^(r-1) / 2^(m+2) and additive energy >= 2^(-2m-4) |A|^3.
LawReport check_connectedness(const LawOptions& o);

/// Decomposes generated coset-ring functions (dimension drawn from
/// [min(n, 4), n], 1..4 flats): exact evaluation, L <= 2 for single cosets,
/// norm additivity (1e-9) and progress (1/2 - 1e-6) on every split.
LawReport check_roundtrip(const LawOptions& o);

const std::vector<std::string>& law_ids();

/// Throws InvalidArgument for unknown ids.
LawReport run_law(const std::string& id, const LawOptions& o);

}  // namespace specnorm
