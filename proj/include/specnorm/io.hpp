#pragma once

// Text and JSON formats.
//
// Truth table:
//   n=<int>
//   bits=<2^n characters 0/1>          (boolean)
//   real= v_0 v_1 ... v_{2^n-1}        (whitespace separated decimals)
// Index x runs over 0 .. 2^n - 1; bit i of x is coordinate i.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "specnorm/additive.hpp"
#include "specnorm/decompose.hpp"
#include "specnorm/fourier.hpp"
#include "specnorm/generate.hpp"
#include "specnorm/gf2.hpp"
#include "specnorm/spectral.hpp"

namespace specnorm {

using Json = nlohmann::ordered_json;

struct TruthTable {
    RealFn f;
    bool boolean;
};

/// Throws InvalidArgument on malformed input.
TruthTable read_truth_table(std::istream& in);
TruthTable read_truth_table(const std::filesystem::path& path);

/// 0/1-valued functions use bits=, everything else real= with %.17g.
void write_truth_table(std::ostream& out, const RealFn& f);
void write_truth_table(const std::filesystem::path& path, const RealFn& f);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Nonzero coefficients (|c| > 1e-12) sorted by |c| descending, then r.
Json spectrum_json(const Spectrum& s);

Json to_json(const Subgroup& h);
/// Sorted hex list.
Json to_json(const PointSet& a);
Json to_json(const SupportCertificate& cert);
Json to_json(const CosetRingExpr& expr);
Json to_json(const DecomposeReport& report);
Json to_json(const Decomposition& d);
Json to_json(const CosetRingConstruction& c);

/// Subgroup from a list of hex generators.
Subgroup subgroup_from_json(Ambient ambient, const Json& j);

}  // namespace specnorm
