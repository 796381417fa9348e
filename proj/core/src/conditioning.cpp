#include "iup/conditioning.hpp"

#include "iup/error.hpp"
#include "iup/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace iup {

void ConditioningProblem::validate() const {
    if (localisation.size() != q) throw Error(ErrorKind::DimensionMismatch, "localisation must list q atom sets");
    std::set<std::pair<size_t, AtomLabel>> required, seen;
    for (size_t k = 0; k < q; ++k)
        for (const auto& a : localisation[k]) required.emplace(k, a);
    for (const auto& t : transitions) {
        if (t.k >= q || t.to >= q) throw Error(ErrorKind::ParameterOutOfRange, "transition index out of range");
        if (!seen.emplace(t.k, t.atom).second)
            throw Error(ErrorKind::ParameterOutOfRange, "duplicate transition for (" + std::to_string(t.k + 1) + "," + t.atom + ")");
        if (!required.count({t.k, t.atom}))
            throw Error(ErrorKind::ParameterOutOfRange, "transition on atom " + t.atom + " outside the localisation");
    }
    for (const auto& s : self_symmetry)
        if (s.k >= q) throw Error(ErrorKind::ParameterOutOfRange, "self-symmetry index out of range");
}

const Transition* ConditioningProblem::find(size_t k, const AtomLabel& atom) const {
    for (const auto& t : transitions)
        if (t.k == k && t.atom == atom) return &t;
    return nullptr;
}

namespace {

ExtRational negated(const ExtRational& x) { return -x; }

// A wanted atom without a transition is covered when a self-symmetry of P_k carries it onto an atom
// that has one. Returns "mirror of <label> under <sym>", or "missing transition".
std::string mirrored_atom(const ConditioningProblem& problem, const PiecewiseAffineMap& map,
                          const std::vector<SymmetryTransform>& symmetries, size_t k, const MapAtom& atom) {
    const Vector w = interior_point(atom.bounds);
    for (const auto& s : problem.self_symmetry) {
        if (s.k != k) continue;
        auto it = std::find_if(symmetries.begin(), symmetries.end(), [&](const SymmetryTransform& g) { return g.name == s.sym; });
        if (it == symmetries.end()) continue;
        const Vector y = it->apply(w);
        for (const auto& other : map.atoms())
            if (other.label != atom.label && contains_point(other.bounds, y) && problem.find(k, other.label))
                return "mirror of " + other.label + " under " + s.sym;
    }
    return "missing transition";
}

}  // namespace

VerificationReport verify(const ConditioningProblem& problem, const std::vector<ConstraintMatrix>& candidates,
                          const PiecewiseAffineMap& map, const std::vector<SymmetryTransform>& symmetries, size_t jobs) {
    problem.validate();
    if (candidates.size() != problem.q) throw Error(ErrorKind::DimensionMismatch, "need one candidate per polytope");
    const AlphaPtr& alpha = map.alpha();
    for (const auto& m : candidates)
        if (!same_alpha(m.alpha(), alpha))
            throw Error(ErrorKind::CoefficientMismatch, "candidate and map use different coefficient matrices");

    std::map<std::string, CompatibilityData> compat;
    auto resolve = [&](const std::string& name) {
        if (compat.count(name)) return;
        SymmetryTransform sigma = identity_transform(map.dim());
        if (name != "id") {
            auto it = std::find_if(symmetries.begin(), symmetries.end(), [&](const SymmetryTransform& s) { return s.name == name; });
            if (it == symmetries.end()) throw Error(ErrorKind::IncompatibleSymmetry, "unknown symmetry '" + name + "'");
            sigma = *it;
        }
        auto data = check_compatibility(sigma, alpha);
        if (!data) throw Error(ErrorKind::IncompatibleSymmetry, "symmetry '" + name + "' is not compatible with the coefficient matrix");
        compat.emplace(name, std::move(*data));
    };
    for (const auto& t : problem.transitions) resolve(t.sym);
    for (const auto& s : problem.self_symmetry) resolve(s.sym);

    std::vector<ConstraintMatrix> optimized;
    for (const auto& m : candidates) optimized.push_back(optimize(m));

    std::vector<ConditionVerdict> conditions;
    for (size_t k = 0; k < problem.q; ++k) {
        conditions.push_back({"optimality", k, "", "m_k = O(m_k)", false, ExtRational()});
        conditions.push_back({"nonempty", k, "", "P_k is not empty", false, ExtRational()});
        conditions.push_back({"ambient", k, "", "P_k inside M", false, ExtRational()});
        for (const auto& at : map.atoms()) {
            bool wanted = std::count(problem.localisation[k].begin(), problem.localisation[k].end(), at.label) > 0;
            conditions.push_back({"localisation", k, at.label, wanted ? "P_k meets A" : "P_k misses A", false, ExtRational()});
            if (!wanted) continue;
            std::string detail;
            if (!problem.find(k, at.label)) detail = mirrored_atom(problem, map, symmetries, k, at);
            conditions.push_back({"dynamics", k, at.label, detail, false, ExtRational()});
        }
        for (const auto& s : problem.self_symmetry)
            if (s.k == k) conditions.push_back({"self_symmetry", k, s.sym, s.sym + "(P_k) = P_k", false, ExtRational()});
    }

    parallel_for(conditions.size(), jobs, [&](size_t n) {
        ConditionVerdict& c = conditions[n];
        const ConstraintMatrix& m = candidates[c.k];
        if (c.kind == "optimality") {
            c.margin = negated(max_difference(m, optimized[c.k]));
            c.pass = m == optimized[c.k];
        } else if (c.kind == "nonempty") {
            c.margin = nonempty_margin(m);
            c.pass = !is_empty(m);
        } else if (c.kind == "ambient") {
            c.margin = inclusion_margin(m, map.ambient());
            c.pass = c.margin >= ExtRational(0L);
        } else if (c.kind == "localisation") {
            ConstraintMatrix piece = intersect(m, map.atom(c.atom).bounds);
            bool wanted = c.detail == "P_k meets A";
            bool empty = is_empty(piece);
            ExtRational width = nonempty_margin(piece);
            c.margin = wanted ? width : negated(width);
            c.pass = wanted ? !empty : empty;
        } else if (c.kind == "dynamics") {
            if (c.detail == "missing transition") {
                c.margin = ExtRational::neg_inf();
                c.pass = false;
                return;
            }
            if (!c.detail.empty()) return;
            const Transition* t = problem.find(c.k, c.atom);
            const CompatibilityData& data = compat.at(t->sym);
            ConstraintMatrix image = map.image_of_polytope(m, c.atom);
            ConstraintMatrix target = apply_to_matrix(data, optimized[t->to]);
            if (t->target_atom) target = intersect(target, map.atom(*t->target_atom).bounds);
            std::string to = t->sym + "(P_" + std::to_string(t->to + 1) + ")";
            if (t->target_atom) to += " & A_" + *t->target_atom;
            if (is_empty(image)) {
                c.detail = "empty piece";
                c.margin = ExtRational::neg_inf();
                c.pass = false;
            } else if (t->equality) {
                c.detail = "image = " + to;
                // O(sigma(O(m))) is the general form; without the commuting certificate optimize again.
                ConstraintMatrix rhs = commutes_with_optimize(data) && !t->target_atom ? target : optimize(target);
                c.margin = negated(max_difference(image, rhs));
                c.pass = optimize(image).bounds() == rhs.bounds();
            } else {
                c.detail = "image in " + to;
                c.margin = inclusion_margin(image, target);
                c.pass = c.margin >= ExtRational(0L);
            }
        } else if (c.kind == "self_symmetry") {
            ConstraintMatrix img = apply_to_matrix(compat.at(c.atom), m);
            c.margin = negated(max_difference(img, m));
            c.pass = img == m || optimize(img) == optimized[c.k];
            c.atom.clear();
        }
    });

    // Mirrored atoms take the verdict of the atom they are mapped onto.
    for (auto& c : conditions) {
        if (c.kind != "dynamics" || c.detail.rfind("mirror of ", 0) != 0) continue;
        const std::string source = c.detail.substr(10, c.detail.find(' ', 10) - 10);
        for (const auto& o : conditions)
            if (o.kind == "dynamics" && o.k == c.k && o.atom == source) {
                c.pass = o.pass;
                c.margin = o.margin;
            }
    }

    VerificationReport report;
    report.conditions = std::move(conditions);
    report.pass = std::all_of(report.conditions.begin(), report.conditions.end(), [](const ConditionVerdict& c) { return c.pass; });
    return report;
}

VerificationReport verify(const VerificationBundle& bundle, size_t jobs) {
    return verify(bundle.problem, bundle.candidates, bundle.map, bundle.symmetries, jobs);
}

AsiupResult check_asiup(const std::vector<ConstraintMatrix>& candidates, const std::vector<SymmetryTransform>& generators,
                        const SymmetryTransform& sigma) {
    AsiupResult result;
    if (candidates.empty()) {
        result.pass = true;
        return result;
    }
    const size_t d = candidates.front().dim();
    std::vector<Matrix> linear;
    std::vector<std::string> names;
    for (const auto& g : generators) linear.push_back(g.linear);
    auto group = group_closure(linear, d);
    for (size_t g = 0; g < group.size(); ++g) {
        for (size_t k = 0; k < candidates.size(); ++k) {
            std::string name = "g" + std::to_string(g) + "(P_" + std::to_string(k + 1) + ")";
            SymmetryTransform branch = torus_branch(group[g], candidates[k], name);
            result.members.push_back(optimize(transform_polytope(branch, candidates[k])));
            result.member_names.push_back(name);
        }
    }
    std::vector<ConstraintMatrix> reflected;
    for (const auto& u : result.members) reflected.push_back(transform_polytope(sigma, u));
    for (size_t i = 0; i < result.members.size(); ++i) {
        for (size_t j = 0; j < reflected.size(); ++j) {
            AlphaPtr merged = merge_alphas(result.members[i].alpha(), reflected[j].alpha());
            ConstraintMatrix a = embed(result.members[i], merged), b = embed(reflected[j], merged);
            if (!is_empty(intersect(a, b))) {
                result.pass = false;
                result.witness = std::make_pair(result.member_names[i], sigma.name + "(" + result.member_names[j] + ")");
                return result;
            }
        }
    }
    result.pass = true;
    return result;
}

BisectResult bisect_threshold(const ProblemFamily& family, const Rational& lo0, const Rational& hi0, const Rational& tol,
                              size_t jobs) {
    if (!(lo0 < hi0) || sgn(tol) <= 0) throw Error(ErrorKind::ParameterOutOfRange, "need lo < hi and tol > 0");
    BisectResult out{lo0, hi0, 0, {}};
    auto passes = [&](const Rational& eps) {
        bool ok = verify(family(eps), jobs).pass;
        out.evaluations.emplace_back(eps, ok);
        return ok;
    };
    if (passes(lo0)) throw Error(ErrorKind::NotBracketing, "verify passes at the lower end " + to_string(lo0));
    if (!passes(hi0)) throw Error(ErrorKind::NotBracketing, "verify fails at the upper end " + to_string(hi0));
    while (out.hi - out.lo > tol) {
        Rational mid = (out.lo + out.hi) / 2;
        if (passes(mid)) out.hi = mid;
        else out.lo = mid;
        ++out.iterations;
    }
    // Opportunistic monotonicity spot checks on either side of the bracket.
    if (out.lo > lo0 && passes((lo0 + out.lo) / 2))
        throw Error(ErrorKind::NonMonotone, "pass below the bracket at " + to_string(Rational((lo0 + out.lo) / 2)));
    if (out.hi < hi0 && !passes((out.hi + hi0) / 2))
        throw Error(ErrorKind::NonMonotone, "fail above the bracket at " + to_string(Rational((out.hi + hi0) / 2)));
    return out;
}

Rational evaluate(const Polynomial& p, const Rational& x) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

ClosedFormThreshold threshold_ma(const Rational& a) {
    // (4 eps - 3a - 2)^2 = 9a^2 + 4a - 4, divided by 8.
    double ad = a.get_d();
    return {"eps_ma", "(3a+2-sqrt(9a^2+4a-4))/4",
            {Rational(a + 1), Rational(-(3 * a + 2)), Rational(2)},
            (3 * ad + 2 - std::sqrt(9 * ad * ad + 4 * ad - 4)) / 4};
}

ClosedFormThreshold threshold_eps3() {
    Polynomial p{-4, 15, -14, 4};
    // Bisection in double for the reported approximation.
    double lo = 0.39, hi = 0.40;
    auto f = [](double e) { return ((4 * e - 14) * e + 15) * e - 4; };
    for (int i = 0; i < 100; ++i) {
        double mid = (lo + hi) / 2;
        ((f(mid) < 0) == (f(lo) < 0) ? lo : hi) = mid;
    }
    return {"eps3", "real root of 4e^3-14e^2+15e-4", p, (lo + hi) / 2};
}

ClosedFormThreshold threshold_p4() {
    return {"eps_p4", "(5-sqrt(17))/2", {2, -5, 1}, (5 - std::sqrt(17.0)) / 2};
}

std::vector<ClosedFormThreshold> closed_form_thresholds(const Rational& a) {
    return {threshold_ma(a), threshold_eps3(), threshold_p4()};
}

bool certifies_root(const Polynomial& p, const Rational& lo, const Rational& hi) {
    return sgn(evaluate(p, lo)) * sgn(evaluate(p, hi)) < 0;
}

}  // namespace iup
