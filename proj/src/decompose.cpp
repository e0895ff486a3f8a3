#include "specnorm/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>

#include "specnorm/error.hpp"

namespace specnorm {

DecomposeMode parse_mode(const std::string& name) {
    if (name == "heuristic") return DecomposeMode::heuristic;
    if (name == "exhaustive") return DecomposeMode::exhaustive;
    if (name == "fallback-only") return DecomposeMode::fallback_only;
    throw InvalidArgument("unknown decomposition mode '" + name + "'");
}

std::string to_string(DecomposeMode mode) {
    switch (mode) {
        case DecomposeMode::heuristic: return "heuristic";
        case DecomposeMode::exhaustive: return "exhaustive";
        case DecomposeMode::fallback_only: return "fallback-only";
    }
    return "?";
}

double default_eta_schedule(double eps, double m) {
    const double mp1 = m + 1.0;
    return eps / (16.0 * mp1 * mp1 * std::max(1.0, std::log2(mp1)));
}

bool constant_on_cosets(const RealFn& g, const Subgroup& h) {
    if (g.ambient() != h.ambient()) throw AmbientMismatch();
    for (Point x = 0; x < g.size(); ++x) {
        if (g[x] != g[h.reduce(x)]) return false;
    }
    return true;
}

std::vector<SignedCosetTerm> extract_coset_terms(const RealFn& f_int, const Subgroup& h) {
    if (!constant_on_cosets(f_int, h)) {
        throw InvalidArgument("function is not constant on cosets of the subgroup");
    }
    std::vector<SignedCosetTerm> out;
    for (Point rep : coset_reps(h)) {
        const double v = f_int[rep];
        if (v != 0.0) out.push_back({static_cast<std::int64_t>(v), rep, h});
    }
    return out;
}

std::vector<SubgroupTerm> coset_to_subgroups(const SignedCosetTerm& term) {
    std::vector<SubgroupTerm> out;
    const int sign = term.coeff > 0 ? 1 : -1;
    const std::int64_t copies = term.coeff > 0 ? term.coeff : -term.coeff;
    if (term.subgroup.contains(term.rep)) {
        for (std::int64_t i = 0; i < copies; ++i) out.push_back({sign, term.subgroup});
        return out;
    }
    const Subgroup joined = extend(term.subgroup, term.rep);
    for (std::int64_t i = 0; i < copies; ++i) {
        out.push_back({sign, joined});
        out.push_back({-sign, term.subgroup});
    }
    return out;
}

CosetRingExpr trivial_expr(const RealFn& f_int) {
    const Subgroup zero = Subgroup::trivial(f_int.ambient());
    CosetRingExpr expr{f_int.ambient(), {}};
    for (Point x = 0; x < f_int.size(); ++x) {
        const double v = f_int[x];
        if (v == 0.0) continue;
        if (v != std::nearbyint(v)) throw InvalidArgument("trivial_expr needs integer values");
        for (auto& t : coset_to_subgroups({static_cast<std::int64_t>(v), x, zero})) {
            expr.terms.push_back(std::move(t));
        }
    }
    return expr;
}

CosetRingExpr simplify(const CosetRingExpr& expr) {
    std::map<std::vector<Point>, std::size_t> slot;
    std::vector<std::pair<const Subgroup*, std::int64_t>> net;
    for (const SubgroupTerm& t : expr.terms) {
        std::vector<Point> key(t.subgroup.basis().begin(), t.subgroup.basis().end());
        auto [it, inserted] = slot.emplace(std::move(key), net.size());
        if (inserted) net.emplace_back(&t.subgroup, 0);
        net[it->second].second += t.sign;
    }
    CosetRingExpr out{expr.ambient, {}};
    for (const auto& [h, count] : net) {
        const int sign = count > 0 ? 1 : -1;
        for (std::int64_t i = 0; i < std::abs(count); ++i) out.terms.push_back({sign, *h});
    }
    return out;
}

RealFn evaluate(const CosetRingExpr& expr) {
    RealFn out(expr.ambient);
    for (const SubgroupTerm& t : expr.terms) {
        if (t.subgroup.ambient() != expr.ambient) throw AmbientMismatch();
        for (Point x : enumerate(t.subgroup)) out[x] += t.sign;
    }
    return out;
}

namespace {

bool is_zero(const RealFn& g) {
    return std::all_of(g.values().begin(), g.values().end(), [](double v) { return v == 0.0; });
}

PartStatus classify(const AlmostIntFn& part, const Subgroup& h) {
    return constant_on_cosets(part.f_int, h) ? PartStatus::finished : PartStatus::unfinished;
}

}  // namespace

SplitOutcome split_along(const AlmostIntFn& f, const Subgroup& concentration,
                         const SupportCertificate& support) {
    const Subgroup& hp = support.subgroup;
    const RealFn f1 = psi(f.f, hp);
    AlmostIntFn r1 = round_to_int(f1);
    AlmostIntFn r2 = round_to_int(f.f - f1);
    for (Point x = 0; x < f.f.size(); ++x) {
        if (r1.f_int[x] + r2.f_int[x] != f.f_int[x]) {
            throw NotAlmostInteger("roundings of the two pieces do not add up to f_Z");
        }
    }
    SplitOutcome out{false,
                     concentration,
                     support,
                     std::move(r1),
                     std::move(r2),
                     PartStatus::finished,
                     PartStatus::finished,
                     a_norm(f.f),
                     0.0,
                     0.0};
    out.a_norm_f1 = a_norm(out.f1.f);
    out.a_norm_f2 = a_norm(out.f2.f);
    out.status1 = classify(out.f1, hp);
    out.status2 = classify(out.f2, hp);
    return out;
}

SplitOutcome inductive_step(const AlmostIntFn& f, double eta, const Subgroup* h_hint,
                            const ConcentrationParams& params) {
    if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
    const Ambient amb = f.f.ambient();
    if (is_zero(f.f_int)) {
        SplitOutcome out{true,
                         Subgroup::full(amb),
                         {Subgroup::full(amb), eta, 0, 0.0, 0},
                         f,
                         round_to_int(RealFn(amb)),
                         PartStatus::finished,
                         PartStatus::finished,
                         a_norm(f.f),
                         0.0,
                         0.0};
        out.a_norm_f1 = out.a_norm_before;
        return out;
    }
    const Subgroup h = h_hint ? *h_hint : find_concentration_subgroup(f, params).subgroup;
    return split_along(f, h, find_spectral_support(f.f, h, eta));
}

namespace {

struct Part {
    AlmostIntFn f;
    double norm;
    int depth;
    std::size_t order;
};

struct PartLess {
    bool operator()(const Part& a, const Part& b) const {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.order > b.order;
    }
};

void append_cosets(CosetRingExpr& expr, const RealFn& f_int, const Subgroup& h) {
    for (const SignedCosetTerm& t : extract_coset_terms(f_int, h)) {
        for (auto& s : coset_to_subgroups(t)) expr.terms.push_back(std::move(s));
    }
}

void append_all(CosetRingExpr& expr, const CosetRingExpr& more) {
    expr.terms.insert(expr.terms.end(), more.terms.begin(), more.terms.end());
}

}  // namespace

Decomposition decompose(const RealFn& f, const DecomposeParams& params) {
    if (!(params.eps0 > 0.0 && params.eps0 < 0.5)) {
        throw InvalidArgument("eps0 must lie in (0, 1/2)");
    }
    if (params.max_depth < 1) throw InvalidArgument("max_depth must be >= 1");
    AlmostIntFn root = round_to_int(f);
    if (root.eps > params.eps0) {
        throw NotAlmostInteger("input deviates from the integers by " + std::to_string(root.eps) +
                               " > eps0");
    }

    Decomposition result{CosetRingExpr{f.ambient(), {}}, {}, root.f_int};
    DecomposeReport& report = result.report;
    report.a_norm = a_norm(f);
    report.input_eps = root.eps;
    report.trivial_length = trivial_expr(root.f_int).length();

    if (params.mode == DecomposeMode::fallback_only) {
        result.expr = trivial_expr(root.f_int);
    } else {
        ConcentrationParams conc = params.concentration;
        conc.exhaustive = conc.exhaustive || params.mode == DecomposeMode::exhaustive;
        const int depth_cap = std::max(2 * static_cast<int>(std::ceil(report.a_norm)),
                                       params.max_depth);

        std::priority_queue<Part, std::vector<Part>, PartLess> queue;
        std::size_t order = 0;
        queue.push({std::move(root), report.a_norm, 0, order++});

        while (!queue.empty()) {
            Part part = queue.top();
            queue.pop();
            if (is_zero(part.f.f_int)) continue;
            report.depth = std::max(report.depth, part.depth);

            bool accepted = false;
            if (part.depth < depth_cap) {
                const ConcentrationResult c = find_concentration_subgroup(part.f, conc);
                const double floor = params.eta_of(params.eps0, part.norm);
                const Spectrum s = wht(part.f.f);
                const auto chain = spectral_support_chain(s, c.subgroup, floor);
                for (std::size_t i = 0; i < chain.size() && !accepted; ++i) {
                    std::optional<SplitOutcome> attempt;
                    try {
                        attempt.emplace(split_along(part.f, c.subgroup, chain[i]));
                    } catch (const NotAlmostInteger&) {
                        continue;
                    }
                    SplitOutcome& out = *attempt;
                    const bool progress = !is_zero(out.f1.f_int);
                    if (!progress && out.status2 != PartStatus::finished) continue;
                    accepted = true;

                    const Subgroup& hp = chain[i].subgroup;
                    append_cosets(result.expr, out.f1.f_int, hp);
                    const bool f2_done = out.status2 == PartStatus::finished;
                    if (f2_done) append_cosets(result.expr, out.f2.f_int, hp);
                    report.splits.push_back({out.a_norm_before, out.a_norm_f1, out.a_norm_f2,
                                             chain[i].worst_mass, part.f.eps,
                                             c.subgroup.codim(), hp.codim(),
                                             static_cast<int>(i), f2_done, part.depth});
                    if (!f2_done) {
                        const double norm = out.a_norm_f2;
                        queue.push({std::move(out.f2), norm, part.depth + 1, order++});
                    }
                }
            }
            if (!accepted) {
                if (params.allow_fallback) {
                    append_all(result.expr, trivial_expr(part.f.f_int));
                    report.fallback_used = true;
                    ++report.fallback_parts;
                } else {
                    ++report.stalled_parts;
                }
            }
        }
        result.expr = simplify(result.expr);
    }

    report.length = result.expr.length();
    report.exact = report.stalled_parts == 0 && evaluate(result.expr) == result.target;
    return result;
}

}  // namespace specnorm
