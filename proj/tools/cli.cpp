#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "acstk/error.hpp"
#include "acstk/invariants.hpp"
#include "acstk/nijenhuis.hpp"
#include "acstk/patch.hpp"

namespace acstk::cli {

namespace {

constexpr const char* kCatalogPrefix = "catalog:";

struct Options {
    std::string algebra;
    std::string acs;
    std::string curve;
    std::string patch;
    std::string samples;
    std::string csv;
    std::string out_path;
    std::string interval;
    double tol_rel = RankTolerance{}.rel;
    double tol_abs = RankTolerance{}.abs;
    int grid = 1001;
    double eps = 1e-3;
    int trials = 100;
    std::uint64_t seed = 0;
    int degree = 10;
    int per_axis = 5;
    int target_rank = 1;
    int k = 0;
    int max_iter = 40;
    bool json = false;
    bool dump_g = false;

    RankTolerance tol() const { return {tol_rel, tol_abs}; }
    Format format() const { return json ? Format::json : Format::human; }
};

// ---------------------------------------------------------------- inputs

std::optional<std::string> catalog_key(const std::string& ref) {
    if (ref.rfind(kCatalogPrefix, 0) == 0) return ref.substr(std::char_traits<char>::length(kCatalogPrefix));
    if (!std::filesystem::exists(ref)) return ref;
    return std::nullopt;
}

LieAlgebra resolve_algebra(const std::string& ref) {
    if (auto key = catalog_key(ref)) {
        if (is_catalog_name(*key)) return catalog(*key);
        if (ref.rfind(kCatalogPrefix, 0) == 0) return catalog(*key);  // reports the bad name
        throw ValidationError("algebra '" + ref + "' is neither a readable file nor a catalog name");
    }
    return load_algebra(read_json_file(ref));
}

Acs resolve_acs(const std::string& ref, int dim) {
    if (auto key = catalog_key(ref)) {
        if (*key == "std") return Acs::standard(dim);
        throw ValidationError("structure '" + ref + "' is neither a readable file nor 'std'");
    }
    return load_acs(read_json_file(ref));
}

void require_same_dim(const LieAlgebra& g, int dim, const char* what) {
    if (g.dim() != dim) {
        std::ostringstream os;
        os << what << " has dimension " << dim << " but the algebra has dimension " << g.dim();
        throw ValidationError(os.str());
    }
}

Interval parse_interval(const std::string& text) {
    const auto comma = text.find(',');
    auto number = [&](std::string_view s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ValidationError("--interval expects lo,hi; got '" + text + "'");
        return v;
    };
    if (comma == std::string::npos) throw ValidationError("--interval expects lo,hi; got '" + text + "'");
    const std::string_view all(text);
    const Interval iv{number(all.substr(0, comma)), number(all.substr(comma + 1))};
    if (!(iv.lo < iv.hi)) throw ValidationError("--interval needs lo < hi");
    return iv;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    f << text;
    if (!f) throw ValidationError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------- config echo

Json base_config(const std::string& command, const Options& o) {
    Json c;
    c["command"] = command;
    c["seed"] = o.seed;
    c["tol_rank_rel"] = o.tol_rel;
    c["tol_rank_abs"] = o.tol_abs;
    Json inputs = Json::object();
    if (!o.algebra.empty()) inputs["algebra"] = o.algebra;
    if (!o.acs.empty()) inputs["acs"] = o.acs;
    if (!o.curve.empty()) inputs["curve"] = o.curve;
    if (!o.patch.empty()) inputs["patch"] = o.patch;
    if (!o.samples.empty()) inputs["samples"] = o.samples;
    c["inputs"] = inputs;
    return c;
}

Json interval_json(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json to_json(const InvariantReport& r) {
    return Json{{"b1", r.b1}, {"h1_ddc", r.h1_ddc}, {"method_a", r.method_a}, {"method_b", r.method_b},
                {"rank", r.rank}};
}

std::ostream& print_matrix(std::ostream& os, const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << "  ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << std::setw(12) << m(r, c);
        os << "\n";
    }
    return os;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const Options& o, std::ostream& out) {
    Json report;
    report["config"] = base_config("validate", o);
    Json checked = Json::object();
    std::optional<LieAlgebra> g;
    if (!o.algebra.empty()) {
        g = resolve_algebra(o.algebra);
        checked["algebra"] = Json{{"name", g->name()}, {"dim", g->dim()}, {"jacobi_defect", g->jacobi_defect().worst}};
    }
    if (!o.acs.empty()) {
        const Acs j = resolve_acs(o.acs, g ? g->dim() : 0);
        if (g) require_same_dim(*g, j.dim(), "structure");
        checked["acs"] = Json{{"dim", j.dim()}};
    }
    if (!o.curve.empty()) {
        const CurveL c = load_curve(read_json_file(o.curve));
        if (g) require_same_dim(*g, c.dim(), "curve");
        checked["curve"] = Json{{"dim", c.dim()}, {"degree", c.degree()}, {"basis", to_string(c.basis())}};
    }
    if (!o.patch.empty()) {
        const PatchAcs p = load_patch(read_json_file(o.patch));
        checked["patch"] = Json{{"dim", p.dim()}};
    }
    if (!o.samples.empty()) {
        const SampleSet s = load_samples(read_json_file(o.samples));
        checked["samples"] = Json{{"dim", s.j0.dim()}, {"count", s.samples.size()}};
    }
    report["valid"] = checked;
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        for (const auto& [what, info] : checked.items()) os << what << ": ok (dim " << info["dim"] << ")\n";
    });
    return kOk;
}

int cmd_rank(const Options& o, std::ostream& out) {
    const LieAlgebra g = resolve_algebra(o.algebra);
    const Acs j = resolve_acs(o.acs, g.dim());
    require_same_dim(g, j.dim(), "structure");
    const MuBarMatrix mu = mu_bar_matrix(g, j);
    RankResult r;
    r.singular_values = singular_values(mu.g);
    r.rank = numerical_rank(r.singular_values, o.tol());

    Json report;
    report["config"] = base_config("rank", o);
    report["rank"] = r.rank;
    report["max_rank"] = max_complex_rank(g.dim());
    report["singular_values"] = vector_json(r.singular_values);
    if (o.dump_g) report["g"] = complex_matrix_to_json(mu.g);
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        os << "rank = " << r.rank << "\n";
        os << "upper bound = " << max_complex_rank(g.dim()) << "\n";
        os << "singular values:";
        for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) os << " " << r.singular_values(i);
        os << "\n";
        if (o.dump_g) {
            os << "G (real part):\n";
            print_matrix(os, mu.g.real());
            os << "G (imaginary part):\n";
            print_matrix(os, mu.g.imag());
        }
    });
    return kOk;
}

Json profile_summary(const RankProfile& p) {
    Json s;
    s["generic_rank"] = p.generic_rank;
    s["sigma_index"] = p.sigma_index;
    Json ex = Json::array();
    for (const Interval& iv : p.exceptional) ex.push_back(interval_json(iv));
    s["exceptional"] = ex;
    s["skipped"] = p.skipped;
    s["flagged_count"] = p.flagged_count();
    s["flagged_fraction"] = p.flagged_fraction();
    s["endpoint_bound"] = p.endpoint_bound;
    s["semicontinuity_holds"] = p.semicontinuity_holds;
    s["grid_points"] = p.grid.size();
    return s;
}

int cmd_curve_scan(const Options& o, std::ostream& out) {
    const LieAlgebra g = resolve_algebra(o.algebra);
    const CurveL curve = load_curve(read_json_file(o.curve));
    require_same_dim(g, curve.dim(), "curve");
    const RankProfile p = rank_profile(g, curve, o.grid, o.tol());

    Json config = base_config("curve-scan", o);
    config["grid"] = o.grid;
    config["domain"] = interval_json(curve.domain());
    if (!o.csv.empty()) config["csv"] = o.csv;

    Json report;
    report["config"] = config;
    report["summary"] = profile_summary(p);
    if (!o.csv.empty()) {
        write_profile_csv(p, o.csv);
        // The CSV header is fixed, so the resolved configuration travels in a sidecar.
        write_text(o.csv + ".json", dump_stable(report));
    }
    if (o.csv.empty()) {
        Json rows = Json::object();
        rows["t"] = p.grid;
        rows["rank"] = p.ranks;
        Json sig = Json::array();
        for (std::size_t i = 0; i < p.grid.size(); ++i)
            sig.push_back(p.ranks[i] < 0 ? Json(nullptr) : Json(p.sigma_k[i]));
        rows["sigma_k"] = sig;
        report["profile"] = rows;
    }
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        os << "grid points = " << p.grid.size() << "\n";
        os << "generic_rank = " << p.generic_rank << "\n";
        os << "exceptional intervals = " << p.exceptional.size() << "\n";
        for (const Interval& iv : p.exceptional) os << "  [" << iv.lo << ", " << iv.hi << "]\n";
        os << "flagged = " << p.flagged_count() << "/" << p.grid.size() << "\n";
        os << "skipped = " << p.skipped.size() << "\n";
        os << "semicontinuity = " << (p.semicontinuity_holds ? "holds" : "VIOLATED") << " (endpoint bound "
           << p.endpoint_bound << ")\n";
        if (!o.csv.empty()) os << "csv = " << o.csv << "\n";
    });
    return kOk;
}

int cmd_curve_refine(const Options& o, std::ostream& out) {
    const LieAlgebra g = resolve_algebra(o.algebra);
    const CurveL curve = load_curve(read_json_file(o.curve));
    require_same_dim(g, curve.dim(), "curve");
    const Interval iv = o.interval.empty() ? curve.domain() : parse_interval(o.interval);
    int k = o.k;
    if (k <= 0) k = std::max(1, rank_profile(g, curve, o.grid, o.tol()).generic_rank);
    const RefineResult r = refine_exceptional(g, curve, k, iv, o.max_iter, {.scan_n = o.grid, .tol = o.tol()});

    Json config = base_config("curve-refine", o);
    config["grid"] = o.grid;
    config["interval"] = interval_json(iv);
    config["k"] = k;
    config["max_iter"] = o.max_iter;
    Json dips = Json::array();
    for (const LocalizedDip& d : r.dips)
        dips.push_back(Json{{"lo", d.bracket.lo}, {"hi", d.bracket.hi}, {"t_min", d.t_min},
                            {"sigma_min", d.sigma_min}, {"width", d.bracket.width()}});
    Json report{{"config", config}, {"dips", dips}, {"identically_below", r.identically_below}};
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        os << "k = " << k << "\n";
        os << "localized dips = " << r.dips.size() << "\n";
        os << std::setprecision(17);
        for (const LocalizedDip& d : r.dips)
            os << "  t = " << d.t_min << " in [" << d.bracket.lo << ", " << d.bracket.hi
               << "], sigma_k = " << d.sigma_min << "\n";
        if (r.identically_below) os << "note: sigma_k is below the rank threshold on the whole interval\n";
    });
    return kOk;
}

int cmd_perturb(const Options& o, std::ostream& out, std::ostream& err) {
    const LieAlgebra g = resolve_algebra(o.algebra);
    const Acs j0 = resolve_acs(o.acs, g.dim());
    require_same_dim(g, j0.dim(), "structure");
    const PerturbResult r = perturb_to_rank(g, j0, o.target_rank, o.eps, o.trials, o.seed, {.tol = o.tol()});

    Json config = base_config("perturb", o);
    config["target_rank"] = o.target_rank;
    config["eps"] = o.eps;
    config["trials"] = o.trials;
    Json report{{"config", config},
                {"success", r.success},
                {"trials_run", r.trials_run},
                {"best_rank_seen", r.best_rank_seen}};
    if (r.success) {
        report["distance"] = r.distance;
        report["step"] = r.step;
        report["rank"] = r.rank;
        report["trial"] = r.trial;
        report["structure"] = to_json(*r.structure);
        if (!o.out_path.empty()) write_text(o.out_path, dump_stable(to_json(*r.structure)));
    }
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        if (!r.success) return;
        os << "found rank " << r.rank << " structure at C0 distance " << r.distance << " (trial " << r.trial
           << ", step " << r.step << ")\n";
        print_matrix(os, r.structure->matrix());
    });
    if (!r.success) {
        err << "search failed: no structure of rank >= " << o.target_rank << " within " << o.eps << " after "
            << r.trials_run << " trials (best rank seen " << r.best_rank_seen << ")\n";
        return kSearchFailed;
    }
    return kOk;
}

int cmd_approx(const Options& o, std::ostream& out) {
    const SampleSet s = load_samples(read_json_file(o.samples));
    const BernsteinResult r = bernstein_curve(s.j0, s.samples, o.degree);

    Json config = base_config("approx", o);
    config["degree"] = o.degree;
    if (!o.out_path.empty()) config["out"] = o.out_path;
    Json report{{"config", config},
                {"sup_error", r.sup_error},
                {"c0_error", r.c0_error},
                {"sample_count", s.samples.size()},
                {"curve", to_json(r.curve)}};
    if (!o.out_path.empty()) write_text(o.out_path, dump_stable(to_json(r.curve)));
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        os << "degree = " << o.degree << "\n";
        os << "sup error = " << r.sup_error << "\n";
        os << "C0 error = " << r.c0_error << "\n";
        if (!o.out_path.empty()) os << "curve written to " << o.out_path << "\n";
    });
    return kOk;
}

int cmd_invariants(const Options& o, std::ostream& out) {
    const LieAlgebra g = resolve_algebra(o.algebra);
    const Acs j = resolve_acs(o.acs, g.dim());
    require_same_dim(g, j.dim(), "structure");
    const InvariantReport r = h1_ddc(g, j, o.tol());
    Json report{{"config", base_config("invariants", o)}, {"level", "invariant-level"}, {"report", to_json(r)}};
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        os << "h1_ddc = " << r.h1_ddc << " (invariant-level)\n";
        os << "b1 = " << r.b1 << "\n";
        os << "method A = " << r.method_a << ", method B = " << r.method_b << "\n";
        os << "rank = " << r.rank << "\n";
    });
    return kOk;
}

int cmd_patch_rank(const Options& o, std::ostream& out) {
    const PatchAcs p = load_patch(read_json_file(o.patch));
    const GridRank r = min_rank_on_grid(p, o.per_axis, o.tol());
    Json config = base_config("patch-rank", o);
    config["per_axis"] = o.per_axis;
    Json report{{"config", config},
                {"k_min", r.k_min},
                {"argmin", r.argmin},
                {"points", r.points},
                {"histogram", r.histogram}};
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        os << "k_min = " << r.k_min << "\n";
        os << "argmin = (";
        for (std::size_t i = 0; i < r.argmin.size(); ++i) os << (i ? ", " : "") << r.argmin[i];
        os << ")\n";
        os << "grid points = " << r.points << "\n";
        for (std::size_t k = 0; k < r.histogram.size(); ++k) os << "  rank " << k << ": " << r.histogram[k] << "\n";
    });
    return kOk;
}

int cmd_catalog(const Options& o, std::ostream& out) {
    Json report;
    report["config"] = base_config("catalog", o);
    if (o.algebra.empty()) {
        report["names"] = catalog_names();
        emit_report(report, o.format(), out, [&](std::ostream& os) {
            os << "abelian<2m>    abelian algebra of dimension 2m (e.g. abelian6)\n";
            os << "heis3xR3       3-dim Heisenberg algebra times R^3: [e1,e2] = e3\n";
            os << "free2step3gen  free 2-step nilpotent on 3 generators: [e1,e2] = e4, [e1,e3] = e5, [e2,e3] = e6\n";
            os << "structures: 'std' names the standard J (J e_{2a-1} = e_{2a})\n";
        });
        return kOk;
    }
    const LieAlgebra g = resolve_algebra(o.algebra);
    report["algebra"] = to_json(g);
    report["b1"] = b1(g);
    emit_report(report, o.format(), out, [&](std::ostream& os) {
        os << g.name() << " (dim " << g.dim() << ", b1 = " << b1(g) << ")\n";
        for (const BracketEntry& e : g.entries())
            os << "  [e" << e.i + 1 << ",e" << e.j + 1 << "] += " << e.c << " e" << e.k + 1 << "\n";
    });
    return kOk;
}

// ---------------------------------------------------------------- parser wiring

void add_tolerances(CLI::App* sub, Options& o) {
    sub->add_option("--tol-rank-rel", o.tol_rel, "relative singular-value threshold")->check(CLI::PositiveNumber);
    sub->add_option("--tol-rank-abs", o.tol_abs, "absolute singular-value floor")->check(CLI::PositiveNumber);
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_flag("--json", o.json, "emit stable JSON instead of text");
    sub->add_option("--seed", o.seed, "random seed (echoed in every report)");
}

}  // namespace

void emit_report(const Json& report, Format format, std::ostream& out,
                 const std::function<void(std::ostream&)>& human) {
    if (format == Format::json) {
        out << dump_stable(report);
    } else {
        human(out);
    }
}

void write_profile_csv(const RankProfile& profile, const std::string& path) {
    std::ostringstream os;
    os << "t,rank,sigma_k\n";
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        os << format_double(profile.grid[i]) << ',' << profile.ranks[i] << ',';
        if (profile.ranks[i] >= 0) os << format_double(profile.sigma_k[i]);
        os << '\n';
    }
    write_text(path, os.str());
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"acstk: Nijenhuis rank, deformations and invariants of almost complex structures"};
    app.name("acstk");
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "load and check inputs");
    validate->add_option("--algebra", o.algebra, "algebra JSON or catalog name");
    validate->add_option("--acs", o.acs, "structure JSON or 'std'");
    validate->add_option("--curve", o.curve, "curve JSON");
    validate->add_option("--patch", o.patch, "patch JSON");
    validate->add_option("--samples", o.samples, "sample-set JSON");
    add_common(validate, o);
    add_tolerances(validate, o);

    auto* rank = app.add_subcommand("rank", "complex rank of the Nijenhuis tensor");
    rank->add_option("--algebra", o.algebra)->required();
    rank->add_option("--acs", o.acs)->required();
    rank->add_flag("--dump-g", o.dump_g, "print the mu-bar matrix G");
    add_common(rank, o);
    add_tolerances(rank, o);

    auto* scan = app.add_subcommand("curve-scan", "rank profile along a curve");
    scan->add_option("--algebra", o.algebra)->required();
    scan->add_option("--curve", o.curve)->required();
    scan->add_option("--grid", o.grid, "uniform grid size")->capture_default_str();
    scan->add_option("--csv", o.csv, "write the profile as CSV");
    add_common(scan, o);
    add_tolerances(scan, o);

    auto* refine = app.add_subcommand("curve-refine", "localize rank drops along a curve");
    refine->add_option("--algebra", o.algebra)->required();
    refine->add_option("--curve", o.curve)->required();
    refine->add_option("--k", o.k, "singular value index (default: generic rank)");
    refine->add_option("--interval", o.interval, "lo,hi (default: curve domain)");
    refine->add_option("--max-iter", o.max_iter)->capture_default_str()->check(CLI::Range(1, 200));
    refine->add_option("--grid", o.grid, "scan size before refinement")->capture_default_str();
    add_common(refine, o);
    add_tolerances(refine, o);

    auto* perturb = app.add_subcommand("perturb", "random search for a nearby structure of given rank");
    perturb->add_option("--algebra", o.algebra)->required();
    perturb->add_option("--acs", o.acs)->required();
    perturb->add_option("--target-rank", o.target_rank)->capture_default_str();
    perturb->add_option("--eps", o.eps)->capture_default_str()->check(CLI::PositiveNumber);
    perturb->add_option("--trials", o.trials)->capture_default_str()->check(CLI::PositiveNumber);
    perturb->add_option("--out", o.out_path, "write the structure found as JSON");
    add_common(perturb, o);
    add_tolerances(perturb, o);

    auto* approx = app.add_subcommand("approx", "Bernstein approximation of sampled deformation data");
    approx->add_option("--samples", o.samples)->required();
    approx->add_option("--degree", o.degree)->capture_default_str();
    approx->add_option("--out", o.out_path, "write the curve as JSON");
    add_common(approx, o);
    add_tolerances(approx, o);

    auto* inv = app.add_subcommand("invariants", "h1_{d+d^c} and b1 of an invariant structure");
    inv->add_option("--algebra", o.algebra)->required();
    inv->add_option("--acs", o.acs)->required();
    add_common(inv, o);
    add_tolerances(inv, o);

    auto add_patch_options = [&](CLI::App* sub) {
        sub->add_option("--patch", o.patch)->required();
        sub->add_option("--per-axis", o.per_axis)->capture_default_str();
        add_common(sub, o);
        add_tolerances(sub, o);
    };
    auto* patch_rank = app.add_subcommand("patch-rank", "minimum rank of a coordinate patch on a grid");
    add_patch_options(patch_rank);
    auto* patch = app.add_subcommand("patch", "coordinate patch commands");
    patch->require_subcommand(1);
    auto* patch_rank_nested = patch->add_subcommand("rank", "same as patch-rank");
    add_patch_options(patch_rank_nested);

    auto* cat = app.add_subcommand("catalog", "list built-in algebras or show one");
    cat->add_option("--algebra,name", o.algebra, "catalog name to show");
    add_common(cat, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (*validate) {
            if (o.algebra.empty() && o.acs.empty() && o.curve.empty() && o.patch.empty() && o.samples.empty()) {
                err << "error: validate needs at least one input\n\n" << validate->help();
                return kUsage;
            }
            return cmd_validate(o, out);
        }
        if (*rank) return cmd_rank(o, out);
        if (*scan) return cmd_curve_scan(o, out);
        if (*refine) return cmd_curve_refine(o, out);
        if (*perturb) return cmd_perturb(o, out, err);
        if (*approx) return cmd_approx(o, out);
        if (*inv) return cmd_invariants(o, out);
        if (*patch_rank || *patch_rank_nested) return cmd_patch_rank(o, out);
        if (*cat) return cmd_catalog(o, out);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const Json::exception& e) {
        err << "validation error: malformed JSON: " << e.what() << "\n";
        return kValidation;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return kNumerical;
    }
    err << app.help();
    return kUsage;
}

}  // namespace acstk::cli
