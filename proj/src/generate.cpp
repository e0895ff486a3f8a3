#include "specnorm/generate.hpp"

#include <algorithm>

#include "specnorm/error.hpp"

namespace specnorm {

Subgroup random_subgroup(Ambient ambient, int codim, Rng& rng) {
    if (codim < 0 || codim > ambient.n()) throw InvalidArgument("codim out of range");
    Subgroup dual = Subgroup::trivial(ambient);
    while (dual.dim() < codim) {
        const auto r = static_cast<Point>(rng.below(ambient.size()));
        if (!dual.contains(r)) dual = extend(dual, r);
    }
    return annihilator(dual);
}

Flat random_flat(Ambient ambient, Rng& rng) {
    const int codim = rng.between(1, std::min(4, ambient.n()));
    Subgroup h = random_subgroup(ambient, codim, rng);
    const Point offset = h.reduce(static_cast<Point>(rng.below(ambient.size())));
    return {std::move(h), offset};
}

RealFn random_boolean(Ambient ambient, Rng& rng) {
    RealFn f(ambient);
    for (Point x = 0; x < f.size(); ++x) f[x] = static_cast<double>(rng.next() >> 63);
    return f;
}

CosetRingConstruction generate_coset_ring(Ambient ambient, int flats, Rng& rng) {
    if (flats < 1 || flats > 4) throw InvalidArgument("flats must lie in [1, 4]");
    CosetRingConstruction out{{}, {}, {}, {}, RealFn(ambient)};
    std::vector<RealFn> literals;
    for (int i = 0; i < flats; ++i) {
        out.flats.push_back(random_flat(ambient, rng));
        out.negated.push_back(rng.bernoulli(0.25));
        RealFn lit = coset_indicator(out.flats.back().subgroup, out.flats.back().offset);
        if (out.negated.back()) lit = constant(ambient, 1.0) - lit;
        literals.push_back(std::move(lit));
    }
    auto name = [&](int i) {
        return std::string(out.negated[i] ? "~" : "") + "F" + std::to_string(i);
    };
    RealFn acc = literals[0];
    out.expression = name(0);
    for (int i = 1; i < flats; ++i) {
        const char op = rng.bernoulli(0.5) ? '&' : '|';
        out.ops.push_back(op);
        for (Point x = 0; x < acc.size(); ++x) {
            const bool a = acc[x] != 0.0;
            const bool b = literals[i][x] != 0.0;
            acc[x] = (op == '&' ? (a && b) : (a || b)) ? 1.0 : 0.0;
        }
        out.expression = "(" + out.expression + " " + op + " " + name(i) + ")";
    }
    out.f = std::move(acc);
    return out;
}

}  // namespace specnorm
