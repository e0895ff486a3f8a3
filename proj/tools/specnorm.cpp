// specnorm command-line front end.
//
// Exit codes: 0 ok, 1 law failure, 2 bad input, 3 incomplete decomposition.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specnorm/decompose.hpp"
#include "specnorm/error.hpp"
#include "specnorm/generate.hpp"
#include "specnorm/io.hpp"
#include "specnorm/kernels.hpp"
#include "specnorm/laws.hpp"

namespace fs = std::filesystem;
using namespace specnorm;

namespace {

constexpr int kOk = 0;
constexpr int kLawFailure = 1;
constexpr int kBadInput = 2;
constexpr int kIncomplete = 3;

void emit_json(const Json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        write_text(out, text);
    }
}

std::vector<Point> split_hex_list(const std::string& s) {
    std::vector<Point> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) out.push_back(parse_hex(tok));
    }
    return out;
}

// --- wht / anorm / psi -------------------------------------------------------

struct WhtArgs {
    std::string input, out;
};

int cmd_wht(const WhtArgs& a) {
    const TruthTable t = read_truth_table(fs::path(a.input));
    const Spectrum s = wht(t.f);
    const double an = spec_lp_norm(s, 1.0);
    const double l2f = lp_norm(t.f, 2.0);
    const double l2s = spec_lp_norm(s, 2.0);
    const double residual = std::abs(l2f * l2f - l2s * l2s) / std::max(1.0, l2f * l2f);
    emit_json(spectrum_json(s), a.out);
    std::FILE* human = a.out.empty() || a.out == "-" ? stderr : stdout;
    std::fprintf(human, "a_norm %.17g\nsup %.17g\nparseval_residual %.3g\n", an,
                 spec_lp_norm(s, kInf), residual);
    return kOk;
}

struct AnormArgs {
    std::string input;
    bool json = false;
};

int cmd_anorm(const AnormArgs& a) {
    const TruthTable t = read_truth_table(fs::path(a.input));
    const double an = a_norm(t.f);
    if (a.json) {
        std::cout << Json{{"n", t.f.ambient().n()}, {"a_norm", an}}.dump() << "\n";
    } else {
        std::printf("%.17g\n", an);
    }
    return kOk;
}

struct PsiArgs {
    std::string input, out, subgroup;
};

int cmd_psi(const PsiArgs& a) {
    const TruthTable t = read_truth_table(fs::path(a.input));
    const Subgroup h = rref_span(t.f.ambient(), split_hex_list(a.subgroup));
    const RealFn g = psi(t.f, h);
    if (a.out.empty() || a.out == "-") {
        write_truth_table(std::cout, g);
    } else {
        write_truth_table(fs::path(a.out), g);
    }
    return kOk;
}

// --- decompose ----------------------------------------------------------------

struct DecomposeArgs {
    std::string input, out, mode = "heuristic";
    double eps0 = 0x1p-20;
    std::uint64_t seed = 0;
    int max_depth = 64;
    bool no_fallback = false;
};

int cmd_decompose(const DecomposeArgs& a) {
    const TruthTable t = read_truth_table(fs::path(a.input));
    DecomposeParams p;
    p.mode = parse_mode(a.mode);
    p.eps0 = a.eps0;
    p.seed = a.seed;
    p.max_depth = a.max_depth;
    p.allow_fallback = !a.no_fallback;
    const Decomposition d = decompose(t.f, p);
    emit_json(to_json(d), a.out);
    std::FILE* human = a.out.empty() || a.out == "-" ? stderr : stdout;
    std::fprintf(human, "L %zu (trivial %zu) exact %s fallback %s stalled %d\n", d.report.length,
                 d.report.trivial_length, d.report.exact ? "yes" : "no",
                 d.report.fallback_used ? "yes" : "no", d.report.stalled_parts);
    return d.report.exact ? kOk : kIncomplete;
}

// --- verify -------------------------------------------------------------------

struct VerifyArgs {
    std::string law, json_out, cex_dir = ".";
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
};

struct LawDefaults {
    int n;
    std::uint64_t trials;
};

LawDefaults defaults_for(const std::string& law) {
    if (law == "tiny-norm") return {4, 0};
    if (law == "pd") return {4, 10'000};
    if (law == "approx-hom") return {8, 500};
    if (law == "plunnecke") return {10, 500};
    if (law == "lemma14") return {10, 100};
    if (law == "connectedness") return {8, 200};
    return {10, 200};
}

int cmd_verify(const VerifyArgs& a) {
    const LawDefaults def = defaults_for(a.law);
    LawOptions o;
    o.n = a.n > 0 ? a.n : def.n;
    o.trials = a.trials > 0 ? a.trials : def.trials;
    o.seed = a.seed;
    const LawReport r = run_law(a.law, o);
    std::string cex_path;
    if (r.counterexample) {
        cex_path = (fs::path(a.cex_dir) / (a.law + "-counterexample.json")).string();
        write_text(cex_path, r.counterexample->dump(2) + "\n");
    }
    if (!a.json_out.empty()) emit_json(to_json(r), a.json_out);
    const char* verdict = r.report_only ? "REPORT" : (r.passed() ? "PASS" : "FAIL");
    std::printf("%-6s %-16s n=%-2d trials=%-6llu failures=%-4llu worst_margin=%-12.4g %.2fs%s%s\n",
                verdict, r.law_id.c_str(), r.n, static_cast<unsigned long long>(r.trials),
                static_cast<unsigned long long>(r.failures), r.worst_margin, r.elapsed_seconds,
                cex_path.empty() ? "" : " counterexample=", cex_path.c_str());
    return r.passed() ? kOk : kLawFailure;
}

// --- gen ----------------------------------------------------------------------

struct GenArgs {
    std::string kind, out;
    int n = 8;
    int flats = 2;
    int codim = -1;
    std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& a) {
    const Ambient amb(a.n);
    Rng rng(a.seed);
    RealFn f(amb);
    Json record;
    if (a.kind == "coset-ring") {
        const CosetRingConstruction c = generate_coset_ring(amb, a.flats, rng);
        f = c.f;
        record = to_json(c);
    } else if (a.kind == "random-boolean") {
        f = random_boolean(amb, rng);
        record = {{"n", a.n}};
    } else {
        const int codim = a.codim >= 0 ? a.codim : rng.between(0, a.n);
        if (codim > a.n) throw InvalidArgument("codim exceeds n");
        const Subgroup h = random_subgroup(amb, codim, rng);
        f = coset_indicator(h);
        record = {{"n", a.n}, {"subgroup", to_json(h)}};
    }
    Json sidecar = {{"kind", a.kind}, {"seed", a.seed}};
    sidecar.update(record);
    if (a.out.empty() || a.out == "-") {
        write_truth_table(std::cout, f);
        std::cerr << sidecar.dump() << "\n";
    } else {
        write_truth_table(fs::path(a.out), f);
        write_text(a.out + ".json", sidecar.dump(2) + "\n");
    }
    return kOk;
}

// --- bench --------------------------------------------------------------------

struct BenchArgs {
    std::string kind;
    int n = 16;
    int reps = 5;
    std::uint64_t seed = 1;
    bool json = false;
};

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())) - 1);
    return v[std::min(idx, v.size() - 1)];
}

int cmd_bench(const BenchArgs& a) {
    if (a.reps < 1) throw InvalidArgument("reps must be >= 1");
    if (a.kind == "decompose" && a.n > 12) throw InvalidArgument("decompose bench needs n <= 12");
    const Ambient amb(a.n);
    Rng rng(a.seed);
    std::vector<RealFn> inputs;
    for (int i = 0; i < a.reps; ++i) {
        inputs.push_back(a.kind == "decompose"
                             ? generate_coset_ring(amb, rng.between(1, 4), rng).f
                             : random_boolean(amb, rng));
    }
    std::vector<double> times;
    double sink = 0.0;
    for (const RealFn& f : inputs) {
        const auto start = std::chrono::steady_clock::now();
        if (a.kind == "wht") sink += wht(f)[0];
        else if (a.kind == "anorm") sink += a_norm(f);
        else sink += static_cast<double>(decompose(f).report.length);
        times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    const double med = quantile(times, 0.5);
    const double p90 = quantile(times, 0.9);
    const double throughput = static_cast<double>(amb.size()) / med;
    if (a.json) {
        std::cout << Json{{"kind", a.kind},
                          {"n", a.n},
                          {"reps", a.reps},
                          {"threads", kernels::threads()},
                          {"median_seconds", med},
                          {"p90_seconds", p90},
                          {"points_per_second", throughput}}
                         .dump()
                  << "\n";
    } else {
        std::printf("%s n=%d reps=%d threads=%d median %.6fs p90 %.6fs %.3g points/s (checksum %g)\n",
                    a.kind.c_str(), a.n, a.reps, kernels::threads(), med, p90, throughput, sink);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-norm analysis and coset-ring decomposition on F_2^n"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "Cap on worker threads (default: SPECNORM_THREADS or all cores)")
        ->check(CLI::PositiveNumber);

    WhtArgs wa;
    auto* wht_cmd = app.add_subcommand("wht", "Walsh-Hadamard spectrum of a truth table");
    wht_cmd->add_option("--input", wa.input, "Truth-table file")->required();
    wht_cmd->add_option("--out", wa.out, "Spectrum JSON (default: stdout)");

    AnormArgs aa;
    auto* anorm_cmd = app.add_subcommand("anorm", "Spectral norm of a truth table");
    anorm_cmd->add_option("--input", aa.input, "Truth-table file")->required();
    anorm_cmd->add_flag("--json", aa.json, "Print JSON");

    PsiArgs pa;
    auto* psi_cmd = app.add_subcommand("psi", "Average a truth table over cosets of a subgroup");
    psi_cmd->add_option("--input", pa.input, "Truth-table file")->required();
    psi_cmd->add_option("--subgroup", pa.subgroup, "Comma-separated hex generators")->required();
    psi_cmd->add_option("--out", pa.out, "Output truth table (default: stdout)");

    DecomposeArgs da;
    auto* dec_cmd = app.add_subcommand("decompose", "Signed sum of subgroup indicators");
    dec_cmd->add_option("--input", da.input, "Truth-table file")->required();
    dec_cmd->add_option("--mode", da.mode, "heuristic | exhaustive | fallback-only")
        ->check(CLI::IsMember({"heuristic", "exhaustive", "fallback-only"}));
    dec_cmd->add_option("--eps0", da.eps0, "Largest accepted distance from the integers")
        ->check(CLI::Range(0.0, 0.5));
    dec_cmd->add_option("--seed", da.seed, "Recorded for reproducibility");
    dec_cmd->add_option("--max-depth", da.max_depth, "Depth cap")->check(CLI::PositiveNumber);
    dec_cmd->add_option("--out", da.out, "Decomposition JSON (default: stdout)");
    dec_cmd->add_flag("--no-fallback", da.no_fallback, "Leave stalled parts unexpressed (exit 3)");

    VerifyArgs va;
    auto* ver_cmd = app.add_subcommand("verify", "Run a law check");
    ver_cmd->add_option("law", va.law, "Law id")->required()->check(CLI::IsMember(law_ids()));
    ver_cmd->add_option("--n", va.n, "Dimension (pd: largest degree d)")->check(CLI::PositiveNumber);
    ver_cmd->add_option("--trials", va.trials, "Trials (pd: grid points per degree)");
    ver_cmd->add_option("--seed", va.seed, "Seed");
    ver_cmd->add_option("--json", va.json_out, "Write the report as JSON ('-' for stdout)");
    ver_cmd->add_option("--counterexample-dir", va.cex_dir, "Where counterexamples go");

    GenArgs ga;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a truth table with a JSON construction record");
    gen_cmd->add_option("kind", ga.kind, "coset-ring | random-boolean | subgroup")
        ->required()
        ->check(CLI::IsMember({"coset-ring", "random-boolean", "subgroup"}));
    gen_cmd->add_option("--n", ga.n, "Dimension")->check(CLI::Range(1, kMaxDim));
    gen_cmd->add_option("--flats", ga.flats, "Flats for coset-ring")->check(CLI::Range(1, 4));
    gen_cmd->add_option("--codim", ga.codim, "Codimension for subgroup")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", ga.seed, "Seed");
    gen_cmd->add_option("--out", ga.out, "Truth-table path; the record goes to <out>.json");

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "Time a kernel");
    bench_cmd->add_option("kind", ba.kind, "wht | anorm | decompose")
        ->required()
        ->check(CLI::IsMember({"wht", "anorm", "decompose"}));
    bench_cmd->add_option("--n", ba.n, "Dimension")->check(CLI::Range(1, kMaxDim));
    bench_cmd->add_option("--reps", ba.reps, "Repetitions")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", ba.seed, "Seed");
    bench_cmd->add_flag("--json", ba.json, "Print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    if (threads == 0) {
        if (const char* env = std::getenv("SPECNORM_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || v < 1) {
                std::cerr << "error: SPECNORM_THREADS must be a positive integer\n";
                return kBadInput;
            }
            threads = static_cast<int>(v);
        }
    }
    if (threads > 0) kernels::set_threads(threads);

    try {
        if (*wht_cmd) return cmd_wht(wa);
        if (*anorm_cmd) return cmd_anorm(aa);
        if (*psi_cmd) return cmd_psi(pa);
        if (*dec_cmd) return cmd_decompose(da);
        if (*ver_cmd) return cmd_verify(va);
        if (*gen_cmd) return cmd_gen(ga);
        if (*bench_cmd) return cmd_bench(ba);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const NotAlmostInteger& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const SearchBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
