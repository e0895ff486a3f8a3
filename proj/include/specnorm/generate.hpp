#pragma once

// Random instances: subgroups, flats (cosets of subgroups), uniform boolean
// functions, and boolean members of the coset ring built from flats with
// AND / OR / NOT.

#include <string>
#include <vector>

#include "specnorm/fourier.hpp"
#include "specnorm/gf2.hpp"
#include "specnorm/rng.hpp"

namespace specnorm {

struct Flat {
    Subgroup subgroup;
    /// Smallest word of the coset.
    Point offset;
};

/// Uniform-ish subgroup of the given codimension: annihilator of the span of
/// `codim` random independent frequencies.
Subgroup random_subgroup(Ambient ambient, int codim, Rng& rng);

/// Codimension uniform in [1, min(4, n)], offset uniform.
Flat random_flat(Ambient ambient, Rng& rng);

/// Each point set with probability 1/2.
RealFn random_boolean(Ambient ambient, Rng& rng);

struct CosetRingConstruction {
    std::vector<Flat> flats;
    std::vector<bool> negated;
    /// ops[i] combines the running value with literal i + 1: '&' or '|'.
    std::vector<char> ops;
    /// e.g. "((F0 & ~F1) | F2)"
    std::string expression;
    RealFn f;
};

/// Left fold of `flats` literals (1..4), each negated with probability 1/4,
/// joined by uniformly chosen AND / OR. Connective depth is flats - 1.
CosetRingConstruction generate_coset_ring(Ambient ambient, int flats, Rng& rng);

}  // namespace specnorm
