#include "specnorm/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "specnorm/error.hpp"

namespace specnorm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& tok) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw InvalidArgument("bad real value '" + tok + "'");
    }
    return v;
}

}  // namespace

TruthTable read_truth_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("empty truth table");
    line = trim(line);
    if (line.rfind("n=", 0) != 0) throw InvalidArgument("first line must be n=<int>");
    const std::string ns = line.substr(2);
    if (ns.empty() || !std::all_of(ns.begin(), ns.end(), [](char c) { return std::isdigit(c); }) ||
        ns.size() > 3) {
        throw InvalidArgument("bad dimension '" + ns + "'");
    }
    const Ambient amb(std::stoi(ns));

    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    rest = trim(rest);
    if (rest.rfind("bits=", 0) == 0) {
        std::string bits;
        for (char c : rest.substr(5)) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (c != '0' && c != '1') throw InvalidArgument("bits= accepts only 0 and 1");
            bits.push_back(c);
        }
        if (bits.size() != amb.size()) {
            throw InvalidArgument("expected " + std::to_string(amb.size()) + " bits, got " +
                                  std::to_string(bits.size()));
        }
        RealFn f(amb);
        for (Point x = 0; x < f.size(); ++x) f[x] = bits[x] == '1' ? 1.0 : 0.0;
        return {std::move(f), true};
    }
    if (rest.rfind("real=", 0) == 0) {
        std::istringstream toks(rest.substr(5));
        std::vector<double> values;
        std::string tok;
        while (toks >> tok) values.push_back(parse_real(tok));
        if (values.size() != amb.size()) {
            throw InvalidArgument("expected " + std::to_string(amb.size()) + " values, got " +
                                  std::to_string(values.size()));
        }
        return {RealFn(amb, std::move(values)), false};
    }
    throw InvalidArgument("second line must start with bits= or real=");
}

TruthTable read_truth_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return read_truth_table(in);
}

void write_truth_table(std::ostream& out, const RealFn& f) {
    const auto& v = f.values();
    const bool boolean = std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; });
    out << "n=" << f.ambient().n() << '\n';
    if (boolean) {
        out << "bits=";
        for (double x : v) out << (x == 1.0 ? '1' : '0');
        out << '\n';
        return;
    }
    out << "real=";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", v[i]);
        out << (i ? " " : "") << buf;
    }
    out << '\n';
}

void write_truth_table(const std::filesystem::path& path, const RealFn& f) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    write_truth_table(out, f);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
}

Json spectrum_json(const Spectrum& s) {
    std::vector<Point> nz;
    for (Point r = 0; r < s.size(); ++r) {
        if (std::abs(s[r]) > 1e-12) nz.push_back(r);
    }
    std::sort(nz.begin(), nz.end(), [&](Point a, Point b) {
        const double ma = std::abs(s[a]);
        const double mb = std::abs(s[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    });
    Json out = Json::array();
    for (Point r : nz) out.push_back({{"r", to_hex(r)}, {"coeff", s[r]}});
    return out;
}

Json to_json(const Subgroup& h) {
    Json out = Json::array();
    for (Point b : h.basis()) out.push_back(to_hex(b));
    return out;
}

Json to_json(const PointSet& a) {
    Json out = Json::array();
    for (Point x : a.members()) out.push_back(to_hex(x));
    return out;
}

Json to_json(const SupportCertificate& cert) {
    return {{"subgroup", to_json(cert.subgroup)},
            {"eta", cert.eta},
            {"steps", cert.steps_used},
            {"worst_coset", to_hex(cert.worst_coset_rep)},
            {"worst_mass", cert.worst_mass}};
}

Json to_json(const CosetRingExpr& expr) {
    Json terms = Json::array();
    for (const SubgroupTerm& t : expr.terms) {
        terms.push_back({{"sign", t.sign}, {"basis", to_json(t.subgroup)}});
    }
    return terms;
}

Json to_json(const DecomposeReport& r) {
    Json splits = Json::array();
    for (const SplitRecord& s : r.splits) {
        splits.push_back({{"a_norm_before", s.a_norm_before},
                          {"a_norm_f1", s.a_norm_f1},
                          {"a_norm_f2", s.a_norm_f2},
                          {"eta", s.eta},
                          {"eps_level", s.eps_level},
                          {"codim_concentration", s.codim_concentration},
                          {"codim_support", s.codim_support},
                          {"chain_index", s.chain_index},
                          {"f2_finished", s.f2_finished},
                          {"depth", s.depth}});
    }
    return {{"L", r.length},
            {"L_trivial", r.trivial_length},
            {"depth", r.depth},
            {"a_norm", r.a_norm},
            {"input_eps", r.input_eps},
            {"fallback_used", r.fallback_used},
            {"fallback_parts", r.fallback_parts},
            {"stalled_parts", r.stalled_parts},
            {"exact", r.exact},
            {"splits", std::move(splits)}};
}

Json to_json(const Decomposition& d) {
    return {{"n", d.expr.ambient.n()},
            {"L", d.expr.length()},
            {"terms", to_json(d.expr)},
            {"report", to_json(d.report)},
            {"exact", d.report.exact}};
}

Json to_json(const CosetRingConstruction& c) {
    Json flats = Json::array();
    for (std::size_t i = 0; i < c.flats.size(); ++i) {
        flats.push_back({{"subgroup", to_json(c.flats[i].subgroup)},
                         {"offset", to_hex(c.flats[i].offset)},
                         {"negated", static_cast<bool>(c.negated[i])}});
    }
    Json ops = Json::array();
    for (char op : c.ops) ops.push_back(std::string(1, op));
    return {{"n", c.f.ambient().n()},
            {"flats", std::move(flats)},
            {"ops", std::move(ops)},
            {"expression", c.expression}};
}

Subgroup subgroup_from_json(Ambient ambient, const Json& j) {
    if (!j.is_array()) throw InvalidArgument("subgroup must be a JSON array of hex strings");
    std::vector<Point> gens;
    for (const auto& e : j) {
        if (!e.is_string()) throw InvalidArgument("subgroup generators must be hex strings");
        gens.push_back(parse_hex(e.get<std::string>()));
    }
    return rref_span(ambient, gens);
}

}  // namespace specnorm
