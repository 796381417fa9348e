#include "iup/catalog.hpp"

#include "iup/error.hpp"

#include <algorithm>

namespace iup {

namespace {

const Rational kHalf(1, 2);

void require_open_unit_half(const Rational& v, const char* name) {
    if (!(sgn(v) > 0 && v < kHalf)) throw Error(ErrorKind::ParameterOutOfRange, std::string(name) + " must lie in (0, 1/2)");
}

Bounds b(const Rational& lo, const Rational& hi) { return {ExtRational(lo), ExtRational(hi)}; }

Bounds lower_only(const Rational& lo) { return {ExtRational(lo), ExtRational::pos_inf()}; }
Bounds upper_only(const Rational& hi) { return {ExtRational::neg_inf(), ExtRational(hi)}; }

std::vector<SymmetryTransform> named(std::initializer_list<const char*> names) {
    std::vector<SymmetryTransform> out;
    for (const char* n : names) out.push_back(named_symmetry(n));
    return out;
}

}  // namespace

AlphaPtr alpha_a(const Rational& a) { return make_alpha({{1, 0}, {0, 1}, {a, 1}, {1, a}}); }

AlphaPtr alpha_a_extended(const Rational& a) {
    if (a == 1) return make_alpha({{1, 0}, {0, 1}, {1, 1}});
    return make_alpha({{1, 0}, {0, 1}, {a, 1}, {1, a}, {1, 1}});
}

ConstraintMatrix ma_matrix(const Rational& varrho, const Rational& a, const Rational& eps) {
    require_open_unit_half(varrho, "varrho");
    require_open_unit_half(eps, "eps");
    if (a < 1) throw Error(ErrorKind::ParameterOutOfRange, "a must be at least 1");
    const Rational r = (1 - 2 * varrho * eps) / (3 - 2 * eps);
    const Rational s = 1 - 2 * varrho;
    Bounds x1 = b(eps * s, r);
    Bounds x2 = b(r, 1 - 2 * eps * (1 - varrho - eps * s));
    Bounds a12 = b((1 + a) / a * (r + (a - 1) * eps * s), (1 + a) * r);
    Bounds b12 = b((1 + a) * r, (1 + a) / a * (a * r + 2 * (a - 1) * (1 - eps) * (1 - eps) * (1 - 2 * r)));
    if (a == 1) {
        Bounds sum{std::max(a12.lower, b12.lower), std::min(a12.upper, b12.upper)};
        return ConstraintMatrix(alpha_a_extended(a), {x1, x2, sum});
    }
    return ConstraintMatrix(alpha_a(a), {x1, x2, a12, b12});
}

ConditioningProblem problem_3_1() {
    ConditioningProblem p;
    p.q = 1;
    p.localisation = {{"001", "011"}};
    p.transitions = {{0, "001", 0, "sigma_321", true, {}}, {0, "011", 0, "id", false, {}}};
    return p;
}

CatalogEntry make_ma(const Rational& varrho, const Rational& a, const Rational& eps) {
    ConstraintMatrix raw = ma_matrix(varrho, a, eps);
    AlphaPtr alpha = alpha_a_extended(a);
    CatalogEntry e{"ma",
                   {{"varrho", varrho}, {"a", a}, {"eps", eps}},
                   {problem_3_1(), {optimize(embed(raw, alpha))},
                    build_g_map({varrho, 1 - 2 * varrho, varrho}, eps, alpha), named({"sigma_321"})},
                   {}};
    e.group_generators = named({"sigma_321"});
    return e;
}

Rational p_star(const Rational& eps) { return (2 - eps) / (2 * (3 - 2 * eps)); }

std::string delta_violation(const Delta& d, const Rational& eps) {
    const Rational p = p_star(eps);
    const Rational t = 2 * (1 - eps);
    const Rational mn = std::min(d[1], d[3]), mx = std::max(d[1], d[3]);
    if (sgn(d[0]) < 0) return "0 <= 2(1-eps) delta1";
    if (t * d[0] > 2 * p - (1 - eps)) return "2(1-eps) delta1 <= 2p* - (1-eps)";
    if (d[0] > eps * (1 - 2 * p) + t * mn) return "delta1 <= eps(1-2p*) + 2(1-eps) min{delta2,delta4}";
    if (sgn(mn) < 0) return "0 <= 2(1-eps) min{delta2,delta4}";
    if (t * mx > p - (1 - eps) * (1 - eps)) return "2(1-eps) max{delta2,delta4} <= p* - (1-eps)^2";
    if (sgn(d[2]) < 0) return "0 <= delta3";
    if (d[2] > mn) return "delta3 <= min{delta2,delta4}";
    if (d[2] + mx > d[0]) return "delta3 + max{delta2,delta4} <= delta1";
    if (mx > d[4]) return "max{delta2,delta4} <= delta5";
    if (d[4] > eps - p) return "delta5 <= eps - p*";
    if (d[4] + d[0] > 1 - 2 * p + mn) return "delta5 + delta1 <= 1 - 2p* + min{delta2,delta4}";
    // Conditions from the atom-by-atom checks that the collected system leaves out.
    const Rational all = std::max(mx, d[2]);
    if (t * d[0] > 2 * p - eps) return "2(1-eps) delta1 <= 2p* - eps";
    if (t * all > p - eps / 2) return "2(1-eps) max{delta2,delta3,delta4} <= p* - eps/2";
    if (std::max(d[0], Rational(d[2] + d[4])) > 1 - 2 * p) return "max{delta1, delta3+delta5} <= 1 - 2p*";
    if (mx > Rational(1, 2) - p) return "max{delta2,delta4} <= 1/2 - p*";
    if (t * d[0] > 2 * p - Rational(1, 2)) return "2(1-eps) delta1 <= 2p* - 1/2";
    if (d[4] > Rational(1, 2) - p) return "delta5 <= 1/2 - p*";
    if (d[0] > Rational(1, 2) - p + d[2]) return "delta1 <= 1/2 - p* + delta3";
    const Rational lhs = t * std::min(Rational(p - eps / 2 - t * d[2]), Rational(2 * p - Rational(1, 2) - 2 * t * d[2]));
    if (lhs > 1 - 2 * p - d[0]) return "2(1-eps) min{p* - eps/2 - 2(1-eps)delta3, 2p* - 1/2 - 4(1-eps)delta3} <= 1 - 2p* - delta1";
    if (d[4] > eps * (Rational(3, 2) - eps) - p) return "delta5 <= eps(3/2-eps) - p*";
    if (d[0] > Rational(1, 2) - p + mn) return "delta1 <= 1/2 - p* + min{delta2,delta4}";
    return "";
}

Delta sample_delta_box(const Rational& eps, std::mt19937_64& rng) {
    const Rational p = p_star(eps);
    const Rational t = 2 * (1 - eps);
    std::uniform_int_distribution<long> unit(0, 1000);
    auto fraction = [&] { return rat(unit(rng), 1000); };
    auto clamp0 = [](const Rational& v) { return sgn(v) < 0 ? Rational(0) : v; };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Delta d;
        d[0] = fraction() * clamp0(std::min(Rational((2 * p - (1 - eps)) / t), Rational(eps * (1 - 2 * p))));
        Rational cap = clamp0(std::min({Rational((p - (1 - eps) * (1 - eps)) / t), d[0], Rational(1 - 2 * p - d[0]), Rational(eps - p)}));
        d[1] = fraction() * cap;
        d[3] = fraction() * cap;
        Rational mn = std::min(d[1], d[3]), mx = std::max(d[1], d[3]);
        d[2] = fraction() * clamp0(std::min(mn, Rational(d[0] - mx)));
        Rational top = std::min(Rational(1 - 2 * p - d[0]), Rational(eps - p));
        d[4] = mx + fraction() * clamp0(top - mx);
        if (delta_violation(d, eps).empty()) return d;
    }
    return Delta{0, 0, 0, 0, 0};
}

std::pair<ConstraintMatrix, ConstraintMatrix> m1_m2_matrices(const Delta& d, const Rational& eps) {
    require_open_unit_half(eps, "eps");
    const Rational p = p_star(eps);
    const Rational t = 2 * (1 - eps);
    const Rational e2 = eps / 2;
    AlphaPtr alpha = canonical_alpha(3);
    ConstraintMatrix m1(alpha, {b(1 - 2 * p + t * d[0], 1 - eps), b(e2, p - t * d[1]), b(0, p - e2 - t * d[2]),
                                b(1 - p + t * d[2], 1 - e2), b(e2, p - t * d[2]), b(1 - p + t * d[3], 1 - e2)});
    ConstraintMatrix m2(alpha, {b(2 * p + d[0], 1), b(p + d[1], 1 - p - d[1]), b(0, 1 - 2 * p - d[0]),
                                b(1 + p + d[2], 2 - p - d[4]), b(p + d[4], 1 - p - d[2]), b(1 + p + d[3], 2 - p - d[3])});
    return {m1, m2};
}

ConditioningProblem problem_3_3() {
    ConditioningProblem p;
    p.q = 2;
    p.localisation = {{"000101", "100101"}, {"100101", "100111", "100112", "110111", "110112", "110212"}};
    // The transitions of the three P_2 atoms mirrored by sigma_4321 follow from the self-symmetry.
    p.transitions = {{0, "000101", 1, "id", false, {}},   {0, "100101", 0, "id", false, {}},
                     {1, "110111", 0, "id", true, {}},    {1, "110112", 0, "sigma_4231", false, {}},
                     {1, "110212", 1, "id", false, {}}};
    p.self_symmetry = {{1, "sigma_4321"}};
    return p;
}

CatalogEntry make_m1_m2(const Delta& delta, const Rational& eps, DeltaCheck check) {
    require_open_unit_half(eps, "eps");
    if (check == DeltaCheck::Enforce) {
        std::string v = delta_violation(delta, eps);
        if (!v.empty()) throw Error(ErrorKind::DeltaInfeasible, v);
    }
    auto [m1, m2] = m1_m2_matrices(delta, eps);
    CatalogEntry e{"m1m2", {{"eps", eps}}, {problem_3_3(), {m1, m2}, build_g_map(uniform_rho(3), eps, canonical_alpha(3)),
                                             named({"sigma_4231", "sigma_4321"})},
                   named({"sigma_4231", "sigma_1324"})};
    for (size_t i = 0; i < 5; ++i) e.params.emplace_back("delta" + std::to_string(i + 1), delta[i]);
    return e;
}

AlphaPtr alpha_p4(const Rational& eps) {
    const Rational p = p_star(eps);
    const Rational p1 = 1 - p, p2 = 1 - 2 * p, p3 = 1 - 3 * p;
    return make_alpha({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 2, 3},
                       {p1, p2, p3}, {-p, p2, p3}, {-p, -2 * p, p3}});
}

ConstraintMatrix p4_default_matrix(const Rational& eps) {
    require_open_unit_half(eps, "eps");
    const Rational p = p_star(eps);
    const Rational p2 = 1 - 2 * p, p3 = 1 - 3 * p;
    return ConstraintMatrix(alpha_p4(eps), {b(0, kHalf), b(eps / 2, kHalf), b(0, kHalf), b(eps / 2 * (3 - 2 * eps), 1),
                                            b(0, kHalf), b(0, Rational(3, 2)), b(0, 1), b(p3 / 2, p2),
                                            b(-p / 2 + p3 / 2, 0), b(-3 * p / 2 + p3 / 2, 0)});
}

ConditioningProblem problem_3_4() {
    ConditioningProblem p;
    p.q = 1;
    p.localisation = {{"000000", "000001", "000101"}};
    p.transitions = {{0, "000000", 0, "id", false, AtomLabel("000101")},
                     {0, "000001", 0, "sigma_3124", false, {}},
                     {0, "000101", 0, "sigma_2134", false, {}}};
    return p;
}

CatalogEntry make_p4(const Rational& eps) {
    ConstraintMatrix m = optimize(p4_default_matrix(eps));
    return {"p4",
            {{"eps", eps}},
            {problem_3_4(), {m}, build_g_map(uniform_rho(3), eps, m.alpha()), named({"sigma_3124", "sigma_2134"})},
            named({"sigma_2134", "sigma_1324"})};
}

X3Chain p4_x3_chain(const CatalogEntry& p4) {
    const ConstraintMatrix& P = p4.bundle.candidates.front();
    const Vector e3{0, 0, 1};
    X3Chain chain;
    chain.sup_p = direction_range(P, e3).second.value();
    AsiupResult orbit = check_asiup({P}, p4.group_generators, involution_sigma(3));
    chain.sup_orbit = chain.sup_p;
    for (const auto& u : orbit.members) chain.sup_orbit = std::max(chain.sup_orbit, direction_range(u, e3).second.value());
    chain.inf_sigma_image = direction_range(transform_polytope(involution_sigma(3), P), e3).first.value();
    return chain;
}

ConditioningProblem problem_3_2() {
    ConditioningProblem p;
    p.q = 2;
    p.localisation = {{"001", "011"}, {"011", "111"}};
    p.transitions = {{0, "001", 1, "id", true, {}},
                     {0, "011", 0, "id", false, {}},
                     {1, "011", 1, "id", false, {}},
                     {1, "111", 0, "id", true, {}}};
    return p;
}

Continuation continue_problem2(const Rational& varrho, const Rational& a, const Rational& eps, const Rational& delta) {
    require_open_unit_half(varrho, "varrho");
    require_open_unit_half(eps, "eps");
    if (!(a > 1)) throw Error(ErrorKind::ParameterOutOfRange, "continuation needs a > 1");
    if (!(abs(delta) < varrho)) throw Error(ErrorKind::ParameterOutOfRange, "|delta| must be below varrho");
    const Rational r1 = varrho + delta, r3 = varrho - delta;
    const Rational s = 2 * (1 - eps);
    const Rational det = 1 - s * s;  // (1 - 2 eps)(3 - 2 eps) up to sign
    if (sgn(det) == 0) throw Error(ErrorKind::SingularSystem, "vanishing discriminant");

    // Image chains of the edges x1 = 1/2 and x2 = 1/2.
    const Rational lo1_1 = eps * (1 - 2 * r3);
    const Rational lo1_2 = s * lo1_1 + 2 * eps * r3;
    const Rational hi2_2 = s / 2 + 2 * eps * r1;
    const Rational hi2_1 = s * hi2_2 + 2 * eps * (1 - r1) - 1;
    // c2 = s c1 + u and c1 = s c2 + v.
    auto pair = [&](const Rational& u, const Rational& v) {
        Rational c1 = (s * u + v) / det;
        return std::make_pair(c1, Rational(s * c1 + u));
    };
    auto [L1, L2] = pair(2 * eps * (r3 + a * r1), 2 * eps * (1 - r3 + a * (1 - r1)) - (1 + a));
    auto [U1, U2] = pair(2 * eps * (a * r3 + r1), 2 * eps * (a * (1 - r3) + 1 - r1) - (1 + a));

    AlphaPtr alpha = alpha_a_extended(a);
    auto quad = [&](const Rational& lo_x1, const Rational& hi_x2, const Rational& lo_sum, const Rational& hi_sum) {
        return ConstraintMatrix(alpha, {lower_only(lo_x1), upper_only(hi_x2), upper_only(hi_sum), lower_only(lo_sum), Bounds{}});
    };
    ConstraintMatrix q1 = quad(lo1_1, hi2_1, L1, U1), q2 = quad(lo1_2, hi2_2, L2, U2);

    Continuation out{{"cont2",
                      {{"varrho", varrho}, {"a", a}, {"eps", eps}, {"delta", delta}},
                      {problem_3_2(), {}, build_g_map({r1, 1 - 2 * varrho, r3}, eps, alpha), {}},
                      named({"sigma_321"})},
                     false};
    for (const auto& q : {q1, q2}) {
        if (is_empty(q)) {
            out.verification_required = true;
            out.entry.bundle.candidates.push_back(q);
            continue;
        }
        auto faces = active_faces(q);
        if (!(faces[0].lower && faces[1].upper && faces[2].upper && faces[3].lower)) out.verification_required = true;
        out.entry.bundle.candidates.push_back(optimize(q));
    }
    return out;
}

RadiusBracket continuation_radius(const Rational& varrho, const Rational& a, const Rational& eps, const Rational& hi,
                                  const Rational& tol, int sign) {
    auto passes = [&](const Rational& d) {
        Continuation c = continue_problem2(varrho, a, eps, sign < 0 ? Rational(-d) : d);
        return verify(c.entry.bundle).pass;
    };
    RadiusBracket r{0, hi};
    if (!passes(r.lo)) throw Error(ErrorKind::NotBracketing, "continuation fails at delta = 0");
    if (passes(r.hi)) throw Error(ErrorKind::NotBracketing, "continuation still passes at the upper end");
    while (r.hi - r.lo > tol) {
        Rational mid = (r.lo + r.hi) / 2;
        (passes(mid) ? r.lo : r.hi) = mid;
    }
    return r;
}

}  // namespace iup
