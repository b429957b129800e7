#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "acstk/acs.hpp"
#include "acstk/algebra.hpp"
#include "acstk/curve.hpp"
#include "acstk/deform.hpp"
#include "acstk/patch.hpp"

namespace acstk {

using Json = nlohmann::json;

// Algebra: {"name": string, "dim": int, "brackets": [{"i","j","k","c"}]},
// 1-based indices with i < j.
LieAlgebra load_algebra(const Json& doc);
Json to_json(const LieAlgebra& g);

// Acs: {"dim": int, "matrix": [[...], ...]} row-major.
Acs load_acs(const Json& doc);
Json to_json(const Acs& j);

Matrix matrix_from_json(const Json& rows, const std::string& what);
Json matrix_to_json(const Matrix& m);
/// {"re": [[...]], "im": [[...]]}
Json complex_matrix_to_json(const CMatrix& m);

// Curve: {"j0": matrix, "coeffs": [matrix, ...], "domain": [lo, hi]} plus an
// optional "basis": "monomial" | "bernstein" (default monomial).
CurveL load_curve(const Json& doc);
Json to_json(const CurveL& c);

// Patch: {"dim": int, "entries": [["expr", ...], ...], "box": [[lo, hi], ...]}.
PatchAcs load_patch(const Json& doc);

// Samples for Bernstein approximation:
// {"j0": matrix, "samples": [{"t": number, "L": matrix}, ...]}.
struct SampleSet {
    Acs j0;
    std::vector<CurveSample> samples;
};
SampleSet load_samples(const Json& doc);

Json read_json_file(const std::string& path);

/// Deterministic rendering: sorted keys (nlohmann objects are ordered maps),
/// floats with 17 significant digits, integers verbatim, compact separators
/// and a trailing newline when pretty is false; two-space indentation otherwise.
std::string dump_stable(const Json& j, bool pretty = true);

/// 17-significant-digit float text used by JSON and CSV emission.
std::string format_double(double v);

}  // namespace acstk
