#include "iup/io.hpp"

#include "iup/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace iup {

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const ExtRational& x) { return to_string(x); }

Json to_json(const Vector& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

Json to_json(const Matrix& m) {
    Json j = Json::array();
    for (const auto& r : m) j.push_back(to_json(r));
    return j;
}

Json to_json(const CoefficientMatrix& alpha) { return {{"d", alpha.dim()}, {"rows", to_json(alpha.matrix())}}; }

Json to_json(const ConstraintMatrix& m) {
    Json bounds = Json::array();
    for (const auto& b : m.bounds()) bounds.push_back({to_json(b.lower), to_json(b.upper)});
    return {{"bounds", bounds}};
}

Json to_json(const SymmetryTransform& s, const AlphaPtr& alpha) {
    Json j{{"name", s.name}, {"linear", to_json(s.linear)}, {"offset", to_json(s.offset)}};
    if (alpha) {
        if (auto data = check_compatibility(s, alpha)) {
            Json perm = Json::array();
            for (size_t p : data->perm) perm.push_back(p + 1);
            j["compat"] = {{"diag", to_json(data->diag)}, {"perm", perm}, {"offset", to_json(data->offset)}};
        }
    }
    return j;
}

Json to_json(const std::vector<Atom>& atoms) {
    Json j = Json::array();
    for (const auto& a : atoms) j.push_back({{"label", a.label}, {"bounds", to_json(a.bounds)["bounds"]}});
    return j;
}

Json to_json(const PiecewiseAffineMap& map) {
    Json atoms = Json::array();
    for (const auto& a : map.atoms())
        atoms.push_back({{"label", a.label}, {"bounds", to_json(a.bounds)["bounds"]}, {"offset", to_json(a.offset)}});
    Json j{{"d", map.dim()}, {"a", to_json(map.expansion())}};
    if (map.rho) j["rho"] = to_json(*map.rho);
    if (map.eps) j["eps"] = to_json(*map.eps);
    j["atoms"] = atoms;
    return j;
}

Json to_json(const ConditioningProblem& p) {
    Json loc = Json::object();
    for (size_t k = 0; k < p.q; ++k) loc[std::to_string(k + 1)] = p.localisation[k];
    Json tr = Json::array();
    for (const auto& t : p.transitions) {
        Json j{{"k", t.k + 1}, {"atom", t.atom}, {"to", t.to + 1}, {"sym", t.sym}, {"equality", t.equality}};
        if (t.target_atom) j["target_atom"] = *t.target_atom;
        tr.push_back(j);
    }
    Json self = Json::array();
    for (const auto& s : p.self_symmetry) self.push_back({{"k", s.k + 1}, {"sym", s.sym}});
    return {{"q", p.q}, {"localisation", loc}, {"transitions", tr}, {"self_symmetry", self}};
}

Json to_json(const VerificationReport& r) {
    Json conds = Json::array();
    for (const auto& c : r.conditions) {
        Json j{{"kind", c.kind}, {"k", c.k + 1}};
        if (!c.atom.empty()) j["atom"] = c.atom;
        j["detail"] = c.detail;
        j["pass"] = c.pass;
        j["margin"] = to_json(c.margin);
        conds.push_back(j);
    }
    return {{"pass", r.pass}, {"conditions", conds}};
}

Json to_json(const ClusterReport& r) {
    Json sweep = Json::array();
    for (const auto& s : r.clustering.sweep) sweep.push_back({{"threshold", s.threshold}, {"count", s.count}});
    Json clusters = Json::array();
    for (const auto& c : r.clusters) {
        Json hits = Json::object();
        for (const auto& [label, n] : c.hits) hits[label] = n;
        clusters.push_back({{"size", c.size}, {"representative", c.representative + 1}, {"sym", c.sym}, {"hits", hits}});
    }
    Json reps = Json::array();
    for (size_t c : r.representatives) reps.push_back(c + 1);
    return {{"clusters_found", r.clustering.count},
            {"threshold", r.clustering.threshold},
            {"plateau", {r.clustering.plateau_low, r.clustering.plateau_high}},
            {"representatives", reps},
            {"clusters", clusters},
            {"sweep", sweep}};
}

Json to_json(const CatalogEntry& e) {
    Json params = Json::object();
    for (const auto& [k, v] : e.params) params[k] = to_json(v);
    const AlphaPtr& alpha = e.bundle.map.alpha();
    Json cands = Json::array();
    for (const auto& c : e.bundle.candidates) cands.push_back(to_json(c));
    Json syms = Json::array();
    for (const auto& s : e.bundle.symmetries) syms.push_back(to_json(s, alpha));
    Json gens = Json::array();
    for (const auto& s : e.group_generators) gens.push_back(to_json(s));
    return {{"which", e.which},     {"params", params},   {"alpha", to_json(*alpha)},
            {"candidates", cands}, {"problem", to_json(e.bundle.problem)},
            {"map", to_json(e.bundle.map)}, {"symmetries", syms}, {"group_generators", gens}};
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error(ErrorKind::ParseError, "rationals must be strings \"p/q\" or integers");
}

ExtRational ext_rational_from_json(const Json& j) {
    if (j.is_string()) return parse_ext_rational(j.get<std::string>());
    return ExtRational(rational_from_json(j));
}

Vector vector_from_json(const Json& j) {
    Vector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Matrix matrix_from_json(const Json& j) {
    Matrix m;
    for (const auto& r : j) m.push_back(vector_from_json(r));
    return m;
}

AlphaPtr alpha_from_json(const Json& j) {
    Matrix rows = matrix_from_json(j.at("rows"));
    if (j.contains("d") && !rows.empty() && rows.front().size() != j.at("d").get<size_t>())
        throw Error(ErrorKind::DimensionMismatch, "\"d\" does not match the rows");
    return make_alpha(std::move(rows));
}

ConstraintMatrix constraint_matrix_from_json(const Json& j, const AlphaPtr& alpha) {
    const Json& arr = j.is_object() ? j.at("bounds") : j;
    std::vector<Bounds> b;
    for (const auto& pair : arr) b.push_back({ext_rational_from_json(pair.at(0)), ext_rational_from_json(pair.at(1))});
    return ConstraintMatrix(alpha, std::move(b));
}

SymmetryTransform symmetry_from_json(const Json& j) {
    SymmetryTransform s{j.at("name").get<std::string>(), matrix_from_json(j.at("linear")), {}};
    s.offset = j.contains("offset") ? vector_from_json(j.at("offset")) : Vector(s.linear.size());
    if (s.offset.size() != s.linear.size()) throw Error(ErrorKind::DimensionMismatch, "symmetry offset length");
    return s;
}

std::vector<SymmetryTransform> symmetries_from_json(const Json& j) {
    std::vector<SymmetryTransform> out;
    for (const auto& s : j) out.push_back(symmetry_from_json(s));
    return out;
}

PiecewiseAffineMap map_from_json(const Json& j, const AlphaPtr& alpha) {
    std::vector<MapAtom> atoms;
    for (const auto& a : j.at("atoms"))
        atoms.push_back({a.at("label").get<std::string>(), constraint_matrix_from_json(a.at("bounds"), alpha),
                         vector_from_json(a.at("offset"))});
    PiecewiseAffineMap map(rational_from_json(j.at("a")), std::move(atoms), unit_cube(alpha));
    if (j.contains("rho")) map.rho = vector_from_json(j.at("rho"));
    if (j.contains("eps")) map.eps = rational_from_json(j.at("eps"));
    return map;
}

ConditioningProblem problem_from_json(const Json& j) {
    ConditioningProblem p;
    p.q = j.at("q").get<size_t>();
    p.localisation.resize(p.q);
    const Json& loc = j.at("localisation");
    for (size_t k = 0; k < p.q; ++k) {
        const Json& entry = loc.is_array() ? loc.at(k) : loc.at(std::to_string(k + 1));
        p.localisation[k] = entry.get<std::vector<std::string>>();
    }
    for (const auto& t : j.at("transitions")) {
        Transition tr;
        tr.k = t.at("k").get<size_t>() - 1;
        tr.atom = t.at("atom").get<std::string>();
        tr.to = t.at("to").get<size_t>() - 1;
        tr.sym = t.value("sym", std::string("id"));
        tr.equality = t.value("equality", false);
        if (t.contains("target_atom")) tr.target_atom = t.at("target_atom").get<std::string>();
        p.transitions.push_back(std::move(tr));
    }
    if (j.contains("self_symmetry"))
        for (const auto& s : j.at("self_symmetry"))
            p.self_symmetry.push_back({s.at("k").get<size_t>() - 1, s.at("sym").get<std::string>()});
    p.validate();
    return p;
}

CatalogEntry catalog_entry_from_json(const Json& j) {
    AlphaPtr alpha = alpha_from_json(j.at("alpha"));
    std::vector<ConstraintMatrix> cands;
    for (const auto& c : j.at("candidates")) cands.push_back(constraint_matrix_from_json(c, alpha));
    CatalogEntry e{j.value("which", std::string()), {},
                   {problem_from_json(j.at("problem")), std::move(cands), map_from_json(j.at("map"), alpha),
                    symmetries_from_json(j.value("symmetries", Json::array()))},
                   symmetries_from_json(j.value("group_generators", Json::array()))};
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) e.params.emplace_back(k, rational_from_json(v));
    return e;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_orbit_csv(const std::string& path, const Orbit& orbit) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    const size_t d = orbit.points.empty() ? orbit.seed.size() : orbit.points.front().size();
    for (size_t i = 0; i < d; ++i) out << "x" << i + 1 << ",";
    out << "atom\n";
    out << std::setprecision(17);
    for (size_t n = 0; n < orbit.points.size(); ++n) {
        for (double v : orbit.points[n]) out << v << ",";
        // Labels are digit strings; quote them so spreadsheet tools keep leading zeros.
        out << '"' << orbit.labels[n] << "\"\n";
    }
}

Orbit read_orbit_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty orbit file");
    size_t d = static_cast<size_t>(std::count(line.begin(), line.end(), ','));
    Orbit orbit;
    orbit.seed.assign(d, 0.0);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        Point p;
        for (size_t i = 0; i < d; ++i) {
            if (!std::getline(ss, cell, ',')) throw Error(ErrorKind::ParseError, "short orbit row");
            p.push_back(std::stod(cell));
        }
        std::getline(ss, cell);
        if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
        orbit.points.push_back(std::move(p));
        orbit.labels.push_back(cell);
    }
    orbit.steps = orbit.points.size();
    return orbit;
}

}  // namespace iup
