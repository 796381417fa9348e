#include "iup/catalog.hpp"
#include "iup/error.hpp"
#include "iup/io.hpp"
#include "iup/orbit.hpp"
#include "iup/partition.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace iup;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitError = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitNoStructure = 3;

struct Globals {
    size_t jobs = 1;
    std::string manifest_dir;
    std::string format = "json";
};

// Collects what the manifest needs while a subcommand runs.
class Manifest {
public:
    Manifest(std::string subcommand, const Globals& g) : subcommand_(std::move(subcommand)), globals_(g) {}

    void param(const std::string& key, const std::string& value) { params_[key] = value; }
    void input(const std::string& path) { inputs_.push_back(path); }
    void output(const std::string& path) { outputs_.push_back(path); }

    void write() const {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        Json j;
        j["subcommand"] = subcommand_;
        j["tool_version"] = kVersion;
        j["parameters"] = params_;
        j["jobs"] = globals_.jobs;
        j["format"] = globals_.format;
        j["inputs"] = inputs_;
        j["outputs"] = outputs_;
        j["wall_time_seconds"] = wall;
        for (const auto& out : outputs_) write_json_file(manifest_path(out), j);
    }

private:
    std::string manifest_path(const std::string& out) const {
        fs::path p(out);
        std::string name = p.filename().string() + ".manifest.json";
        if (globals_.manifest_dir.empty()) return (p.parent_path() / name).string();
        fs::create_directories(globals_.manifest_dir);
        return (fs::path(globals_.manifest_dir) / name).string();
    }

    std::string subcommand_;
    Globals globals_;
    std::map<std::string, std::string> params_;
    std::vector<std::string> inputs_, outputs_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void ensure_parent(const std::string& path) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

// "varrho=1/3,a=2" -> map of exact rationals.
std::map<std::string, Rational> parse_params(const std::string& text) {
    std::map<std::string, Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "expected key=value in --params, got '" + item + "'");
        out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    }
    return out;
}

Rational need(const std::map<std::string, Rational>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw Error(ErrorKind::ParameterOutOfRange, "missing parameter '" + key + "'");
    return it->second;
}

Rational get_or(const std::map<std::string, Rational>& p, const std::string& key, const Rational& fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

Vector rho_from(const std::string& rho, size_t dim) {
    if (!rho.empty()) return validate_rho(parse_vector(rho));
    if (dim == 0) throw Error(ErrorKind::ParameterOutOfRange, "give --dim or --rho");
    return uniform_rho(dim);
}

CatalogEntry build_entry(const std::string& family, const std::map<std::string, Rational>& p) {
    if (family == "ma") return make_ma(need(p, "varrho"), need(p, "a"), need(p, "eps"));
    if (family == "m1m2") {
        Delta d;
        for (size_t i = 0; i < 5; ++i) d[i] = get_or(p, "delta" + std::to_string(i + 1), 0);
        return make_m1_m2(d, need(p, "eps"), DeltaCheck::Enforce);
    }
    if (family == "p4") return make_p4(need(p, "eps"));
    if (family == "cont2")
        return continue_problem2(need(p, "varrho"), need(p, "a"), need(p, "eps"), get_or(p, "delta", 0)).entry;
    throw Error(ErrorKind::ParameterOutOfRange, "unknown family '" + family + "'");
}

std::string params_string(const std::map<std::string, Rational>& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + to_string(v);
    return s;
}

ExtRational min_margin(const VerificationReport& r) {
    ExtRational m = ExtRational::pos_inf();
    for (const auto& c : r.conditions) m = std::min(m, c.margin);
    return m;
}

void write_report_csv(const std::string& path, const VerificationReport& r) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << "kind,k,atom,detail,pass,margin\n";
    for (const auto& c : r.conditions)
        out << c.kind << ',' << c.k + 1 << ',' << csv_field(c.atom) << ',' << csv_field(c.detail) << ','
            << (c.pass ? "true" : "false") << ',' << to_string(c.margin) << '\n';
}

void write_atoms_csv(const std::string& path, const std::vector<Atom>& atoms) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    const auto& alpha = *atoms.front().bounds.alpha();
    out << "atom";
    for (size_t i = 0; i < alpha.rows(); ++i) {
        std::string row;
        for (const auto& c : alpha.row(i)) row += (row.empty() ? "" : " ") + to_string(c);
        out << ',' << csv_field("lower[" + row + "]") << ',' << csv_field("upper[" + row + "]");
    }
    out << '\n';
    for (const auto& a : atoms) {
        out << csv_field(a.label);
        for (const auto& b : a.bounds.bounds()) out << ',' << to_string(b.lower) << ',' << to_string(b.upper);
        out << '\n';
    }
}

int cmd_partition(const Globals& g, size_t dim, const std::string& rho, const std::string& out) {
    Manifest m("partition", g);
    Vector r = rho_from(rho, dim);
    const size_t d = r.size() - 1;
    m.param("dim", std::to_string(d));
    if (!rho.empty()) m.param("rho", rho);
    auto atoms = enumerate_atoms(d);
    ensure_parent(out);
    if (g.format == "csv") write_atoms_csv(out, atoms);
    else write_json_file(out, Json{{"dim", d}, {"atoms", to_json(atoms)}});
    m.output(out);
    m.write();
    std::cout << atoms.size() << " atoms\n";
    return 0;
}

Point parse_seed(const std::string& seed, size_t d, std::string& resolved) {
    if (seed.rfind("random:", 0) == 0) {
        resolved = seed;
        return random_seed_point(d, std::stoull(seed.substr(7)));
    }
    if (seed.rfind("bundle:", 0) == 0) {
        CatalogEntry e = catalog_entry_from_json(read_json_file(seed.substr(7)));
        Vector w = interior_point(e.bundle.candidates.front());
        Point p;
        for (const auto& x : w) p.push_back(x.get_d());
        resolved = seed;
        return p;
    }
    Vector v = parse_vector(seed);
    if (v.size() != d) throw Error(ErrorKind::DimensionMismatch, "seed point has the wrong dimension");
    Point p;
    for (const auto& x : v) p.push_back(x.get_d());
    resolved = seed;
    return p;
}

int cmd_simulate(const Globals& g, size_t dim, const std::string& rho, const std::string& eps_text, const std::string& seed,
                 size_t steps, size_t transient, const std::string& out) {
    Manifest m("simulate", g);
    if (steps == 0) throw CLI::ValidationError("--steps", "must be positive");
    Vector r = rho_from(rho, dim);
    const size_t d = r.size() - 1;
    const Rational eps = parse_rational(eps_text);
    PiecewiseAffineMap map = build_g_map(r, eps, canonical_alpha(d));
    std::string resolved;
    Point start = parse_seed(seed, d, resolved);
    Orbit orbit = simulate(map, start, steps, transient);
    if (orbit.dropped * 2 > steps)
        throw Error(ErrorKind::OnBoundary, std::to_string(orbit.dropped) + " of " + std::to_string(steps) + " iterates hit atom boundaries");
    ensure_parent(out);
    write_orbit_csv(out, orbit);
    std::string rho_s;
    for (const auto& x : r) rho_s += (rho_s.empty() ? "" : ",") + to_string(x);
    m.param("rho", rho_s);
    m.param("eps", to_string(eps));
    m.param("seed", resolved);
    m.param("steps", std::to_string(steps));
    m.param("transient", std::to_string(transient));
    m.param("dropped", std::to_string(orbit.dropped));
    m.output(out);
    m.write();
    std::cout << orbit.points.size() << " points written to " << out << "\n";
    return 0;
}

int cmd_extract(const Globals& g, const std::string& orbit_path, const std::string& atoms_path, size_t dim,
                const std::string& rho, const std::string& eps_text, const std::string& symmetries, const std::string& anchor,
                const std::string& out, std::string report_path) {
    Manifest m("extract", g);
    Orbit orbit = read_orbit_csv(orbit_path);
    m.input(orbit_path);
    if (orbit.points.empty()) throw Error(ErrorKind::ParseError, "orbit file has no points");
    const size_t d = orbit.points.front().size();
    Vector r = rho_from(rho, dim == 0 && rho.empty() ? d : dim);
    if (r.size() != d + 1) throw Error(ErrorKind::DimensionMismatch, "rho does not match the orbit dimension");
    if (!atoms_path.empty()) {
        Json atoms = read_json_file(atoms_path);
        if (atoms.at("dim").get<size_t>() != d) throw Error(ErrorKind::DimensionMismatch, "atoms file has another dimension");
        m.input(atoms_path);
    }
    const Rational eps = parse_rational(eps_text);
    PiecewiseAffineMap map = build_g_map(r, eps, canonical_alpha(d));

    std::vector<SymmetryTransform> syms;
    std::stringstream ss(symmetries);
    for (std::string name; std::getline(ss, name, ',');)
        if (!name.empty()) syms.push_back(named_symmetry(name, d));

    ExtractOptions options;
    if (!anchor.empty()) {
        Point a;
        for (const auto& x : parse_vector(anchor)) a.push_back(x.get_d());
        options.anchor = a;
    }
    Clustering clusters = cluster(orbit.points);
    Extraction ex = extract_problem(orbit, clusters, map, syms, options);

    if (report_path.empty()) report_path = (fs::path(out).parent_path() / "report.json").string();
    ensure_parent(out);
    ensure_parent(report_path);
    write_json_file(out, to_json(ex.problem));
    write_json_file(report_path, to_json(ex.report));
    std::string rho_s;
    for (const auto& x : r) rho_s += (rho_s.empty() ? "" : ",") + to_string(x);
    m.param("rho", rho_s);
    m.param("eps", to_string(eps));
    m.param("symmetries", symmetries);
    if (!anchor.empty()) m.param("anchor", anchor);
    m.output(out);
    m.output(report_path);
    m.write();
    std::cout << ex.problem.q << " polytope(s), " << ex.problem.transitions.size() << " transitions\n";
    return 0;
}

int cmd_verify(const Globals& g, const std::string& problem_path, const std::string& bundle_path, const std::string& report) {
    Manifest m("verify", g);
    CatalogEntry entry = catalog_entry_from_json(read_json_file(bundle_path));
    m.input(bundle_path);
    if (!problem_path.empty()) {
        entry.bundle.problem = problem_from_json(read_json_file(problem_path));
        m.input(problem_path);
    }
    VerificationReport r = verify(entry.bundle, g.jobs);
    if (!report.empty()) {
        ensure_parent(report);
        if (g.format == "csv") write_report_csv(report, r);
        else write_json_file(report, to_json(r));
        m.output(report);
        m.write();
    }
    std::cout << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.conditions)
        if (!c.pass)
            std::cout << "  " << c.kind << " P_" << c.k + 1 << (c.atom.empty() ? "" : " A_" + c.atom) << ": " << c.detail
                      << " (margin " << to_string(c.margin) << ")\n";
    return r.pass ? 0 : kExitVerifyFail;
}

int cmd_threshold(const Globals& g, const std::string& family, const std::string& params_text, const std::string& lo_text,
                  const std::string& hi_text, const std::string& tol_text, const std::string& out) {
    Manifest m("threshold", g);
    auto params = parse_params(params_text);
    ProblemFamily fam;
    Rational lo = rat(3, 10), hi = rat(49, 100);
    if (family == "ma") {
        Rational varrho = get_or(params, "varrho", rat(1, 3)), a = get_or(params, "a", 2);
        params["varrho"] = varrho;
        params["a"] = a;
        fam = [=](const Rational& e) { return make_ma(varrho, a, e).bundle; };
    } else if (family == "m1m2") {
        fam = [](const Rational& e) { return make_m1_m2(Delta{}, e, DeltaCheck::Skip).bundle; };
    } else if (family == "p4") {
        lo = rat(2, 5);
        fam = [](const Rational& e) { return make_p4(e).bundle; };
    } else {
        throw Error(ErrorKind::ParameterOutOfRange, "threshold families are ma, m1m2 and p4");
    }
    if (!lo_text.empty()) lo = parse_rational(lo_text);
    if (!hi_text.empty()) hi = parse_rational(hi_text);
    const Rational tol = parse_rational(tol_text);
    BisectResult b = bisect_threshold(fam, lo, hi, tol, g.jobs);

    std::cout << "[" << to_string(b.lo) << ", " << to_string(b.hi) << "]  ~ [" << b.lo.get_d() << ", " << b.hi.get_d()
              << "]\n";
    m.param("family", family);
    m.param("params", params_string(params));
    m.param("lo", to_string(lo));
    m.param("hi", to_string(hi));
    m.param("tol", to_string(tol));
    if (!out.empty()) {
        ensure_parent(out);
        std::ofstream csv(out);
        if (!csv) throw Error(ErrorKind::ParseError, "cannot write " + out);
        csv << "eps,eps_exact,pass,min_margin,min_margin_exact\n";
        auto evals = b.evaluations;
        std::sort(evals.begin(), evals.end());
        for (const auto& [e, pass] : evals) {
            ExtRational mm = min_margin(verify(fam(e), g.jobs));
            csv << e.get_d() << ',' << to_string(e) << ',' << (pass ? "true" : "false") << ',' << to_double(mm) << ','
                << to_string(mm) << '\n';
        }
        m.output(out);
        m.write();
    }
    return 0;
}

int cmd_catalog(const Globals& g, const std::string& family, const std::string& params_text, const std::string& out) {
    Manifest m("catalog", g);
    auto params = parse_params(params_text);
    CatalogEntry e = build_entry(family, params);
    ensure_parent(out);
    write_json_file(out, to_json(e));
    m.param("family", family);
    m.param("params", params_string(params));
    m.output(out);
    m.write();
    std::cout << "wrote " << family << " bundle to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant unions of polytopes for piecewise affine coupled maps"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--jobs", g.jobs, "Worker threads for verification and sweeps")->check(CLI::PositiveNumber);
    app.add_option("--manifest-dir", g.manifest_dir, "Directory for run manifests (default: next to each output)");
    app.add_option("--format", g.format, "Format of tabular outputs")->check(CLI::IsMember({"json", "csv"}));

    size_t dim = 0;
    std::string rho, eps = "43/100", seed = "random:1", orbit, atoms, symmetries, anchor, report, problem, bundle;
    std::string family, params, lo, hi, tol = "1/1000000";
    size_t steps = 4000, transient = 1000;
    std::string atoms_out, orbit_out, problem_out, sweep_out, bundle_out;

    auto* partition = app.add_subcommand("partition", "Enumerate the atoms of the partition");
    partition->add_option("--dim", dim, "Dimension d")->check(CLI::PositiveNumber);
    partition->add_option("--rho", rho, "Cluster weights rho_1..rho_{d+1}, comma separated");
    partition->add_option("--out", atoms_out, "Output file")->default_val("atoms.json");

    auto* sim = app.add_subcommand("simulate", "Iterate the coupled map in double precision");
    sim->add_option("--dim", dim, "Dimension d (uniform weights)")->check(CLI::PositiveNumber);
    sim->add_option("--rho", rho, "Cluster weights, comma separated");
    sim->add_option("--eps", eps, "Coupling strength")->capture_default_str();
    sim->add_option("--seed", seed, "random:N, bundle:PATH, or a comma separated point")->capture_default_str();
    sim->add_option("--steps", steps, "Retained iterates")->capture_default_str();
    sim->add_option("--transient", transient, "Discarded iterates")->capture_default_str();
    sim->add_option("--out", orbit_out, "Orbit CSV")->default_val("orbit.csv");

    auto* ext = app.add_subcommand("extract", "Cluster an orbit and extract a conditioning problem");
    ext->add_option("--orbit", orbit, "Orbit CSV")->required();
    ext->add_option("--atoms", atoms, "Atoms file from the partition subcommand");
    ext->add_option("--dim", dim, "Dimension d (uniform weights)");
    ext->add_option("--rho", rho, "Cluster weights, comma separated");
    ext->add_option("--eps", eps, "Coupling strength")->capture_default_str();
    ext->add_option("--symmetries", symmetries, "Named symmetries, comma separated");
    ext->add_option("--anchor", anchor, "Point selecting the first representative cluster");
    ext->add_option("--out", problem_out, "Problem file")->default_val("problem.json");
    ext->add_option("--report", report, "Cluster report (default: report.json next to --out)");

    auto* ver = app.add_subcommand("verify", "Verify candidate polytopes against a conditioning problem");
    ver->add_option("--candidate-bundle", bundle, "Bundle written by the catalog subcommand")->required();
    ver->add_option("--problem", problem, "Conditioning problem replacing the bundle's own");
    ver->add_option("--report", report, "Report with exact margins");

    auto* thr = app.add_subcommand("threshold", "Bisect the coupling threshold of a catalog family");
    thr->add_option("--family", family, "ma, m1m2 or p4")->required();
    thr->add_option("--params", params, "Extra parameters, e.g. varrho=1/3,a=2");
    thr->add_option("--lo", lo, "Failing end of the bracket");
    thr->add_option("--hi", hi, "Passing end of the bracket");
    thr->add_option("--tol", tol, "Bracket width")->capture_default_str();
    thr->add_option("--out", sweep_out, "Sweep CSV of eps against minimal margin");

    auto* cat = app.add_subcommand("catalog", "Write a closed-form candidate bundle");
    cat->add_option("--family", family, "ma, m1m2, p4 or cont2")->required();
    cat->add_option("--params", params, "Parameters, e.g. varrho=1/3,a=2,eps=43/100");
    cat->add_option("--out", bundle_out, "Bundle file")->default_val("bundle.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*partition) return cmd_partition(g, dim, rho, atoms_out);
        if (*sim) return cmd_simulate(g, dim, rho, eps, seed, steps, transient, orbit_out);
        if (*ext) return cmd_extract(g, orbit, atoms, dim, rho, eps, symmetries, anchor, problem_out, report);
        if (*ver) return cmd_verify(g, problem, bundle, report);
        if (*thr) return cmd_threshold(g, family, params, lo, hi, tol, sweep_out);
        if (*cat) return cmd_catalog(g, family, params, bundle_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::NoPlateau:
            case ErrorKind::AmbiguousTransition:
            case ErrorKind::UnassignedImage:
                return kExitNoStructure;
            default:
                return kExitError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
