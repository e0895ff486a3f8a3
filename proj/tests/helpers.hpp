#pragma once

#include <algorithm>
#include <vector>

#include "specnorm/fourier.hpp"
#include "specnorm/generate.hpp"
#include "specnorm/gf2.hpp"
#include "specnorm/rng.hpp"

namespace testutil {

using namespace specnorm;

inline RealFn random_real(Ambient amb, Rng& rng, double lo = -1.0, double hi = 1.0) {
    RealFn f(amb);
    for (Point x = 0; x < f.size(); ++x) f[x] = rng.uniform(lo, hi);
    return f;
}

template <class D>
inline std::vector<double> vec(const D& f) {
    return {f.values().begin(), f.values().end()};
}

inline std::vector<Point> elements(const Subgroup& h) {
    auto e = enumerate(h);
    std::sort(e.begin(), e.end());
    return e;
}

/// 1 on {00, 01, 10}, 0 on 11.
inline RealFn three_corner() { return RealFn(Ambient(2), {1.0, 1.0, 1.0, 0.0}); }

}  // namespace testutil
