#include "specnorm/additive.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "specnorm/error.hpp"
#include "specnorm/kernels.hpp"

namespace specnorm {

// --- PointSet ---------------------------------------------------------------

PointSet::PointSet(Ambient ambient)
    : ambient_(ambient), bits_((ambient.size() + 63) / 64, 0) {}

PointSet PointSet::from_members(Ambient ambient, std::span<const Point> members) {
    PointSet s(ambient);
    for (Point x : members) s.insert(x);
    return s;
}

PointSet PointSet::full(Ambient ambient) {
    PointSet s(ambient);
    for (Point x = 0; x <= ambient.mask(); ++x) s.insert(x);
    return s;
}

PointSet PointSet::of_subgroup(const Subgroup& h, Point offset) {
    PointSet s(h.ambient());
    for (Point x : enumerate(h)) s.insert(x ^ offset);
    return s;
}

PointSet PointSet::support(const RealFn& f) {
    PointSet s(f.ambient());
    for (Point x = 0; x < f.size(); ++x) {
        if (f[x] != 0.0) s.insert(x);
    }
    return s;
}

void PointSet::insert(Point x) {
    ambient_.check(x);
    std::uint64_t& w = bits_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (!(w & bit)) {
        w |= bit;
        ++count_;
    }
}

void PointSet::erase(Point x) {
    ambient_.check(x);
    std::uint64_t& w = bits_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (w & bit) {
        w &= ~bit;
        --count_;
    }
}

double PointSet::density() const noexcept {
    return static_cast<double>(count_) / static_cast<double>(ambient_.size());
}

std::vector<Point> PointSet::members() const {
    std::vector<Point> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            out.push_back(static_cast<Point>(w * 64 + std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

RealFn PointSet::indicator() const {
    RealFn f(ambient_);
    for (Point x : members()) f[x] = 1.0;
    return f;
}

bool PointSet::is_subset_of(const PointSet& other) const {
    if (ambient_ != other.ambient_) throw AmbientMismatch();
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        if (bits_[w] & ~other.bits_[w]) return false;
    }
    return true;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatch();
    PointSet out = a;
    for (Point x : b.members()) out.insert(x);
    return out;
}

PointSet set_difference(const PointSet& a, const PointSet& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatch();
    PointSet out(a.ambient());
    for (Point x : a.members()) {
        if (!b.contains(x)) out.insert(x);
    }
    return out;
}

// --- exact convolution counts ---------------------------------------------

namespace {

template <class Int>
std::vector<Int> signed_transform(const PointSet& a) {
    std::vector<Int> w(a.ambient().size(), 0);
    for (Point x : a.members()) w[x] = 1;
    kernels::butterfly(std::span<Int>(w));
    return w;
}

// Inverse of the unnormalised butterfly is the butterfly divided by 2^n; the
// division is exact for transforms of integer count vectors.
template <class Int>
std::vector<Int> inverse_counts(std::vector<Int> w, int n) {
    kernels::butterfly(std::span<Int>(w));
    for (Int& v : w) v >>= n;
    return w;
}

}  // namespace

std::vector<std::int64_t> sum_counts(const PointSet& a, const PointSet& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatch();
    const int n = a.ambient().n();
    // |sum| <= 2^n |A| |B| <= 2^{3n}
    if (3 * n <= 62) {
        auto wa = signed_transform<std::int64_t>(a);
        const auto wb = signed_transform<std::int64_t>(b);
        for (std::size_t i = 0; i < wa.size(); ++i) wa[i] *= wb[i];
        return inverse_counts(std::move(wa), n);
    }
    auto wa = signed_transform<__int128>(a);
    const auto wb = signed_transform<__int128>(b);
    for (std::size_t i = 0; i < wa.size(); ++i) wa[i] *= wb[i];
    const auto c = inverse_counts(std::move(wa), n);
    return std::vector<std::int64_t>(c.begin(), c.end());
}

PointSet sumset(const PointSet& a, const PointSet& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatch();
    PointSet out(a.ambient());
    if (a.empty() || b.empty()) return out;
    const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
    if (pairs <= static_cast<double>(a.ambient().size()) * a.ambient().n()) {
        const auto am = a.members();
        const auto bm = b.members();
        for (Point x : am) {
            for (Point y : bm) out.insert(x ^ y);
        }
        return out;
    }
    const auto counts = sum_counts(a, b);
    for (Point x = 0; x < counts.size(); ++x) {
        if (counts[x] > 0) out.insert(x);
    }
    return out;
}

PointSet iterated(const PointSet& a, int k) {
    if (k < 1) throw InvalidArgument("iterated sumset needs k >= 1");
    PointSet acc = a;
    for (int i = 1; i < k; ++i) acc = sumset(acc, a);
    return acc;
}

SetStats set_stats(const PointSet& a) {
    if (a.empty()) throw InvalidArgument("set statistics need a nonempty set");
    const PointSet aa = sumset(a, a);
    return {a.density(), static_cast<double>(aa.size()) / static_cast<double>(a.size())};
}

std::vector<__int128> quadruple_counts(const PointSet& a) {
    const int n = a.ambient().n();
    auto w = signed_transform<__int128>(a);
    for (__int128& v : w) {
        const __int128 sq = v * v;
        v = sq * sq;
    }
    return inverse_counts(std::move(w), n);
}

RealFn nu4(const PointSet& a) {
    if (a.empty()) throw InvalidArgument("nu4 needs a nonempty set");
    const auto counts = quadruple_counts(a);
    const double scale = std::ldexp(1.0, -3 * a.ambient().n());
    RealFn out(a.ambient());
    for (Point x = 0; x < out.size(); ++x) out[x] = static_cast<double>(counts[x]) * scale;
    return out;
}

PointSet s_eta(const std::vector<__int128>& counts, const PointSet& a, double eta) {
    if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
    // nu4(x) >= eta alpha^3  <=>  count(x) >= eta |A|^3
    const long double size = static_cast<long double>(a.size());
    const long double threshold = static_cast<long double>(eta) * size * size * size;
    PointSet out(a.ambient());
    for (Point x = 0; x < counts.size(); ++x) {
        if (static_cast<long double>(counts[x]) >= threshold) out.insert(x);
    }
    return out;
}

PointSet s_eta(const PointSet& a, double eta) {
    if (a.empty()) throw InvalidArgument("S_eta needs a nonempty set");
    return s_eta(quadruple_counts(a), a, eta);
}

PointSet spec_set(const PointSet& a, double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) throw InvalidArgument("rho must lie in (0, 1]");
    if (a.empty()) throw InvalidArgument("Spec_rho needs a nonempty set");
    const auto w = signed_transform<std::int64_t>(a);
    // |1_A^(r)| >= rho alpha  <=>  |W(r)| >= rho |A|
    const double threshold = rho * static_cast<double>(a.size());
    PointSet out(a.ambient());
    for (Point r = 0; r < w.size(); ++r) {
        if (static_cast<double>(w[r] < 0 ? -w[r] : w[r]) >= threshold) out.insert(r);
    }
    return out;
}

Subgroup bogolyubov_subgroup(const PointSet& a, double rho) {
    const auto spec = spec_set(a, rho).members();
    return annihilator(rref_span(a.ambient(), spec));
}

std::int64_t additive_energy(const PointSet& a) {
    const auto r2 = sum_counts(a, a);
    std::int64_t total = 0;
    for (std::int64_t c : r2) total += c * c;
    return total;
}

// --- arithmetic connectedness ---------------------------------------------

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double c = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (c > static_cast<long double>(cap)) return cap + 1;
    }
    return static_cast<std::uint64_t>(std::llround(c));
}

struct ConnectednessSearch {
    const PointSet& set;
    const std::vector<Point>& elems;
    int m;
    std::vector<Point> tuple;
    std::array<Point, kMaxDim> pivots{};
    ConnectednessResult result;

    // True iff some element of A outside the tuple lies in span(tuple).
    bool has_extra_in_span() const {
        const Subgroup v = rref_span(set.ambient(), tuple);
        if (v.size() <= elems.size()) {
            for (Point x : enumerate(v)) {
                if (x != 0 && set.contains(x) &&
                    std::find(tuple.begin(), tuple.end(), x) == tuple.end()) {
                    return true;
                }
            }
            return false;
        }
        for (Point x : elems) {
            if (v.contains(x) && std::find(tuple.begin(), tuple.end(), x) == tuple.end()) {
                return true;
            }
        }
        return false;
    }

    // Returns false once a violating tuple is found.
    bool search(std::size_t start) {
        if (static_cast<int>(tuple.size()) == m) {
            ++result.tuples_examined;
            if (has_extra_in_span()) return true;
            result.connected = false;
            result.witness = tuple;
            return false;
        }
        for (std::size_t i = start; i < elems.size(); ++i) {
            if (elems.size() - i < static_cast<std::size_t>(m) - tuple.size()) break;
            // Reduce against the current basis; a dependent prefix satisfies
            // the first alternative for every completion.
            Point x = elems[i];
            while (x != 0 && pivots[pivot_of(x)] != 0) x ^= pivots[pivot_of(x)];
            if (x == 0) continue;
            const int p = pivot_of(x);
            pivots[p] = x;
            tuple.push_back(elems[i]);
            const bool ok = search(i + 1);
            tuple.pop_back();
            pivots[p] = 0;
            if (!ok) return false;
        }
        return true;
    }
};

}  // namespace

ConnectednessResult is_arithmetically_connected(const PointSet& a, int m, std::uint64_t budget) {
    if (m < 1) throw InvalidArgument("m must be >= 1");
    if (a.contains(0)) throw ZeroInSet();
    if (a.size() < static_cast<std::size_t>(m)) return {};
    if (binomial_capped(a.size(), static_cast<std::uint64_t>(m), budget) > budget) {
        throw SearchBudgetExceeded("C(|A|, m) exceeds the connectedness search budget");
    }
    const std::vector<Point> elems = a.members();
    ConnectednessSearch s{a, elems, m, {}, {}, {}};
    s.search(0);
    return s.result;
}

// --- concentration search -------------------------------------------------

double concentration_score(const Spectrum& s, const Subgroup& dual) {
    const auto basis = dual.basis();
    const std::size_t count = dual.size();
    std::vector<double> c(count);
    std::vector<Point> word(count, 0);
    c[0] = s[0];
    for (std::size_t b = 1; b < count; ++b) {
        word[b] = word[b & (b - 1)] ^ basis[std::countr_zero(b)];
        c[b] = s[word[b]];
    }
    // Entry j of the transform is psi f on the coset class indexed by j.
    kernels::butterfly(std::span<double>(c));
    double best = 0.0;
    for (double v : c) best = std::max(best, std::abs(v));
    return best;
}

namespace {

struct Candidate {
    Subgroup dual;
    double score;
    std::string stage;
};

class CandidatePool {
public:
    CandidatePool(const Spectrum& s, int max_codim) : s_(s), max_codim_(max_codim) {}

    // Returns the score, or a negative value if the candidate is inadmissible.
    double add(const Subgroup& dual, const std::string& stage) {
        if (dual.dim() > max_codim_) return -1.0;
        auto key = std::vector<Point>(dual.basis().begin(), dual.basis().end());
        if (auto it = seen_.find(key); it != seen_.end()) return it->second;
        const double score = concentration_score(s_, dual);
        seen_.emplace(std::move(key), score);
        pool_.push_back({dual, score, stage});
        return score;
    }

    const std::vector<Candidate>& all() const { return pool_; }

private:
    const Spectrum& s_;
    int max_codim_;
    std::map<std::vector<Point>, double> seen_;
    std::vector<Candidate> pool_;
};

}  // namespace

ConcentrationResult find_concentration_subgroup(const AlmostIntFn& f,
                                                const ConcentrationParams& params) {
    const Ambient amb = f.f.ambient();
    const int n = amb.n();
    double l1_int = 0.0;
    for (double v : f.f_int.values()) l1_int += std::abs(v);
    if (l1_int == 0.0) throw InvalidArgument("concentration search needs f_Z not identically 0");
    l1_int /= static_cast<double>(amb.size());

    const Spectrum s = wht(f.f);
    const double m = spec_lp_norm(s, 1.0);
    double floor = params.density_floor.value_or(l1_int / (8.0 * (m + 1.0)));
    floor = std::clamp(floor, std::ldexp(1.0, -n), 1.0);
    // E 1_H = 2^{-codim} >= floor
    const int max_codim = std::min(n, static_cast<int>(std::floor(-std::log2(floor) + 1e-12)));

    CandidatePool pool(s, max_codim);

    // Bogolyubov subgroups of the support of f_Z.
    const PointSet support = PointSet::support(f.f_int);
    for (double rho : {0.5, 0.25, 0.125}) {
        const auto spec = spec_set(support, rho).members();
        pool.add(rref_span(amb, spec), "bogolyubov");
    }

    // Beam over annihilators of small sets of heavy frequencies.
    std::vector<Point> heavy;
    for (Point r = 1; r < s.size(); ++r) {
        if (std::abs(s[r]) > 1e-12) heavy.push_back(r);
    }
    std::stable_sort(heavy.begin(), heavy.end(), [&](Point x, Point y) {
        return std::abs(s[x]) > std::abs(s[y]);
    });
    if (heavy.size() > static_cast<std::size_t>(params.top_frequencies)) {
        heavy.resize(static_cast<std::size_t>(params.top_frequencies));
    }
    std::vector<Subgroup> beam{Subgroup::trivial(amb)};
    pool.add(beam.front(), "beam");
    for (int level = 1; level <= params.max_subset && !beam.empty(); ++level) {
        std::vector<std::pair<double, Subgroup>> next;
        std::map<std::vector<Point>, bool> queued;
        for (const Subgroup& v : beam) {
            for (Point r : heavy) {
                if (v.contains(r)) continue;
                Subgroup w = extend(v, r);
                std::vector<Point> key(w.basis().begin(), w.basis().end());
                if (queued.count(key)) continue;
                queued[key] = true;
                const double score = pool.add(w, "beam");
                if (score >= 0.0) next.emplace_back(score, std::move(w));
            }
        }
        std::stable_sort(next.begin(), next.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first > y.first;
            return canonical_order(x.second, y.second) < 0;
        });
        if (next.size() > static_cast<std::size_t>(params.beam_width)) {
            next.erase(next.begin() + params.beam_width, next.end());
        }
        beam.clear();
        for (auto& e : next) beam.push_back(std::move(e.second));
    }

    if (params.exhaustive && n <= params.exhaustive_max_n) {
        const int top = std::min(params.max_codim, max_codim);
        for (int k = 0; k <= top; ++k) {
            for_each_subgroup_of_dim(amb, k, [&](const Subgroup& v) { pool.add(v, "exhaustive"); });
        }
    }

    // Selection. Subgroups are compared through their annihilators: a
    // smaller dual is a larger subgroup.
    const double good = params.good_score + f.eps;
    const Candidate* best = nullptr;
    bool best_good = false;
    for (const Candidate& c : pool.all()) {
        const bool is_good = c.score > good;
        if (best == nullptr) {
            best = &c;
            best_good = is_good;
            continue;
        }
        bool better;
        if (is_good != best_good) {
            better = is_good;
        } else if (is_good && c.dual.dim() != best->dual.dim()) {
            better = c.dual.dim() < best->dual.dim();
        } else if (c.score != best->score) {
            better = c.score > best->score;
        } else {
            better = canonical_order(annihilator(c.dual), annihilator(best->dual)) < 0;
        }
        if (better) {
            best = &c;
            best_good = is_good;
        }
    }

    const double sup = lp_norm(f.f, kInf);
    if (best == nullptr || (!best_good && best->score < sup)) {
        return {Subgroup::trivial(amb), sup, "trivial"};
    }
    return {annihilator(best->dual), best->score, best->stage};
}

}  // namespace specnorm
