#include "acstk/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "acstk/error.hpp"

namespace acstk {

namespace {

const Json& require(const Json& doc, const char* key, const std::string& what) {
    if (!doc.is_object() || !doc.contains(key))
        throw ValidationError(what + ": missing field '" + key + "'");
    return doc.at(key);
}

int require_int(const Json& v, const std::string& what) {
    if (!v.is_number_integer()) throw ValidationError(what + " must be an integer");
    return v.get<int>();
}

double require_number(const Json& v, const std::string& what) {
    if (!v.is_number()) throw ValidationError(what + " must be a number");
    return v.get<double>();
}

}  // namespace

LieAlgebra load_algebra(const Json& doc) {
    const std::string what = "algebra";
    const std::string name = doc.is_object() && doc.contains("name") && doc["name"].is_string()
                                 ? doc["name"].get<std::string>()
                                 : "unnamed";
    const int dim = require_int(require(doc, "dim", what), "algebra dim");
    if (dim < 2 || dim % 2 != 0)
        throw ValidationError("algebra dimension must be even and >= 2, got " + std::to_string(dim));
    const Json& list = require(doc, "brackets", what);
    if (!list.is_array()) throw ValidationError("algebra brackets must be an array");
    std::vector<BracketEntry> entries;
    for (const auto& b : list) {
        const int i = require_int(require(b, "i", "bracket"), "bracket i");
        const int j = require_int(require(b, "j", "bracket"), "bracket j");
        const int k = require_int(require(b, "k", "bracket"), "bracket k");
        const double c = require_number(require(b, "c", "bracket"), "bracket c");
        entries.push_back({i - 1, j - 1, k - 1, c});
    }
    return LieAlgebra(name, dim, std::move(entries));
}

Json to_json(const LieAlgebra& g) {
    Json brackets = Json::array();
    for (const auto& e : g.entries())
        brackets.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"c", e.c}});
    return {{"name", g.name()}, {"dim", g.dim()}, {"brackets", brackets}};
}

Matrix matrix_from_json(const Json& rows, const std::string& what) {
    if (!rows.is_array() || rows.empty()) throw ValidationError(what + " must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto cols = rows[0].is_array() ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    Matrix m(n, cols);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ValidationError(what + ": ragged or malformed row " + std::to_string(r + 1));
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = require_number(row[static_cast<std::size_t>(c)], what + " entry");
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json complex_matrix_to_json(const CMatrix& m) {
    return {{"re", matrix_to_json(m.real())}, {"im", matrix_to_json(m.imag())}};
}

Acs load_acs(const Json& doc) {
    const int dim = require_int(require(doc, "dim", "acs"), "acs dim");
    Matrix m = matrix_from_json(require(doc, "matrix", "acs"), "acs matrix");
    if (m.rows() != dim || m.cols() != dim)
        throw ValidationError("acs matrix is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + " but dim is " + std::to_string(dim));
    return Acs(std::move(m));
}

Json to_json(const Acs& j) { return {{"dim", j.dim()}, {"matrix", matrix_to_json(j.matrix())}}; }

CurveL load_curve(const Json& doc) {
    Acs j0(matrix_from_json(require(doc, "j0", "curve"), "curve j0"));
    const Json& cs = require(doc, "coeffs", "curve");
    if (!cs.is_array()) throw ValidationError("curve coeffs must be an array of matrices");
    std::vector<Matrix> coeffs;
    for (const auto& c : cs) coeffs.push_back(matrix_from_json(c, "curve coefficient"));
    const Json& dom = require(doc, "domain", "curve");
    if (!dom.is_array() || dom.size() != 2) throw ValidationError("curve domain must be [lo, hi]");
    const Interval domain{require_number(dom[0], "domain lo"), require_number(dom[1], "domain hi")};
    CurveBasis basis = CurveBasis::monomial;
    if (doc.contains("basis")) {
        if (!doc["basis"].is_string()) throw ValidationError("curve basis must be a string");
        basis = curve_basis_from_string(doc["basis"].get<std::string>());
    }
    return CurveL(std::move(j0), std::move(coeffs), domain, basis);
}

Json to_json(const CurveL& c) {
    Json coeffs = Json::array();
    for (const auto& m : c.coeffs()) coeffs.push_back(matrix_to_json(m));
    return {{"j0", matrix_to_json(c.base().matrix())},
            {"coeffs", coeffs},
            {"domain", {c.domain().lo, c.domain().hi}},
            {"basis", to_string(c.basis())}};
}

PatchAcs load_patch(const Json& doc) {
    const int dim = require_int(require(doc, "dim", "patch"), "patch dim");
    const Json& rows = require(doc, "entries", "patch");
    if (!rows.is_array()) throw ValidationError("patch entries must be an array of rows");
    std::vector<std::vector<Expr>> entries;
    for (const auto& row : rows) {
        if (!row.is_array()) throw ValidationError("patch entry rows must be arrays");
        std::vector<Expr> parsed;
        for (const auto& cell : row) {
            if (!cell.is_string()) throw ValidationError("patch entries must be expression strings");
            const std::string text = cell.get<std::string>();
            try {
                parsed.push_back(parse_expr(text, dim));
            } catch (const ParseError& e) {
                throw ValidationError("in patch entry \"" + text + "\": " + e.what());
            }
        }
        entries.push_back(std::move(parsed));
    }
    const Json& box = require(doc, "box", "patch");
    if (!box.is_array()) throw ValidationError("patch box must be an array of [lo, hi]");
    std::vector<Interval> intervals;
    for (const auto& iv : box) {
        if (!iv.is_array() || iv.size() != 2) throw ValidationError("patch box entries must be [lo, hi]");
        intervals.push_back({require_number(iv[0], "box lo"), require_number(iv[1], "box hi")});
    }
    return PatchAcs(dim, std::move(entries), std::move(intervals));
}

SampleSet load_samples(const Json& doc) {
    Acs j0(matrix_from_json(require(doc, "j0", "samples"), "samples j0"));
    const Json& list = require(doc, "samples", "samples");
    if (!list.is_array()) throw ValidationError("samples must be an array");
    std::vector<CurveSample> samples;
    for (const auto& s : list)
        samples.push_back({require_number(require(s, "t", "sample"), "sample t"),
                           matrix_from_json(require(s, "L", "sample"), "sample L")});
    return {std::move(j0), std::move(samples)};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("malformed JSON in '" + path + "': " + e.what());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    if (v == 0.0) return std::signbit(v) ? "-0.0" : "0.0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

namespace {

void emit(const Json& j, bool pretty, int depth, std::string& out) {
    const std::string pad = pretty ? std::string(2 * (depth + 1), ' ') : "";
    const std::string close_pad = pretty ? std::string(2 * depth, ' ') : "";
    const char* nl = pretty ? "\n" : "";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad + Json(it.key()).dump() + (pretty ? ": " : ":");
                emit(it.value(), pretty, depth + 1, out);
            }
            out += nl + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool scalars = true;
            for (const auto& e : j) scalars = scalars && !e.is_structured();
            out += "[";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += scalars ? (pretty ? ", " : ",") : ",";
                if (!scalars) out += std::string(nl) + pad;
                first = false;
                emit(e, pretty, depth + 1, out);
            }
            if (!scalars) out += nl + close_pad;
            out += "]";
            return;
        }
        case Json::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace

std::string dump_stable(const Json& j, bool pretty) {
    std::string out;
    emit(j, pretty, 0, out);
    out += "\n";
    return out;
}

}  // namespace acstk
