#include "iup/orbit.hpp"

#include "iup/error.hpp"
#include "iup/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace iup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FloatAtom {
    AtomLabel label;
    std::vector<Point> rows;  // unit-normalized
    std::vector<double> lower, upper;
    Point offset;
};

std::vector<FloatAtom> float_atoms(const PiecewiseAffineMap& map) {
    std::vector<FloatAtom> out;
    for (const auto& at : map.atoms()) {
        FloatAtom f{at.label, {}, {}, {}, {}};
        for (size_t i = 0; i < at.bounds.size(); ++i) {
            Point r;
            double norm = 0;
            for (const auto& v : at.bounds.alpha()->row(i)) {
                r.push_back(v.get_d());
                norm += r.back() * r.back();
            }
            norm = std::sqrt(norm);
            for (auto& v : r) v /= norm;
            f.rows.push_back(std::move(r));
            f.lower.push_back(to_double(at.bounds.lower(i)) / norm);
            f.upper.push_back(to_double(at.bounds.upper(i)) / norm);
        }
        for (const auto& v : at.offset) f.offset.push_back(v.get_d());
        out.push_back(std::move(f));
    }
    return out;
}

double atom_margin(const FloatAtom& a, const Point& x) {
    double margin = kInf;
    for (size_t i = 0; i < a.rows.size(); ++i) {
        double v = 0;
        for (size_t j = 0; j < x.size(); ++j) v += a.rows[i][j] * x[j];
        margin = std::min({margin, v - a.lower[i], a.upper[i] - v});
    }
    return margin;
}

double dist2(const Point& a, const Point& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

// max over a in A of the distance from a to its nearest point of B.
double directed_distance(const std::vector<Point>& A, const std::vector<Point>& B) {
    if (A.empty()) return 0;
    if (B.empty()) return kInf;
    double worst = 0;
    for (const auto& a : A) {
        double best = kInf;
        for (const auto& b : B) {
            best = std::min(best, dist2(a, b));
            if (best <= worst) break;
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double nearest_distance(const Point& a, const std::vector<Point>& B) {
    double best = kInf;
    for (const auto& b : B) best = std::min(best, dist2(a, b));
    return std::sqrt(best);
}

Point torus_apply(const Matrix& linear, const Point& x) {
    Point y(x.size(), 0.0);
    for (size_t i = 0; i < x.size(); ++i) {
        for (size_t j = 0; j < x.size(); ++j) y[i] += linear[i][j].get_d() * x[j];
        y[i] -= std::floor(y[i]);
    }
    return y;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Orbit simulate(const PiecewiseAffineMap& map, const Point& seed, size_t steps, size_t transient,
               const SimulateOptions& options) {
    if (steps == 0) throw Error(ErrorKind::ParameterOutOfRange, "steps must be at least 1");
    if (seed.size() != map.dim()) throw Error(ErrorKind::DimensionMismatch, "seed dimension differs from map");
    auto atoms = float_atoms(map);
    const double a = map.expansion().get_d();

    Orbit orbit;
    orbit.seed = seed;
    orbit.steps = steps;
    orbit.transient = transient;
    Point x = seed;
    for (size_t t = 0; t < transient + steps; ++t) {
        for (double v : x)
            if (!(v > -options.escape_tol && v < 1 + options.escape_tol))
                throw Error(ErrorKind::EscapedAmbient, "orbit left the unit cube at step " + std::to_string(t));
        const FloatAtom* best = nullptr;
        double best_margin = -kInf;
        for (const auto& at : atoms) {
            double m = atom_margin(at, x);
            if (m > best_margin) {
                best_margin = m;
                best = &at;
            }
        }
        if (t >= transient) {
            if (best_margin > options.boundary_tol) {
                orbit.points.push_back(x);
                orbit.labels.push_back(best->label);
            } else {
                ++orbit.dropped;
            }
        }
        for (size_t i = 0; i < x.size(); ++i) x[i] = a * x[i] + best->offset[i];
    }
    return orbit;
}

Point random_seed_point(size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point p(d);
    for (auto& v : p) v = u(rng);
    return p;
}

Clustering cluster(const std::vector<Point>& points, const ClusterOptions& options) {
    const size_t n = points.size();
    if (n == 0) throw Error(ErrorKind::ParameterOutOfRange, "cannot cluster an empty orbit");
    const size_t d = points.front().size();

    // Prim's algorithm on the complete graph.
    std::vector<double> edges;
    std::vector<std::pair<size_t, size_t>> edge_ends;
    {
        std::vector<double> best(n, kInf);
        std::vector<size_t> from(n, 0);
        std::vector<bool> done(n, false);
        size_t cur = 0;
        done[0] = true;
        for (size_t step = 1; step < n; ++step) {
            size_t next = n;
            for (size_t j = 0; j < n; ++j) {
                if (done[j]) continue;
                double dd = dist2(points[cur], points[j]);
                if (dd < best[j]) {
                    best[j] = dd;
                    from[j] = cur;
                }
                if (next == n || best[j] < best[next]) next = j;
            }
            done[next] = true;
            edges.push_back(std::sqrt(best[next]));
            edge_ends.emplace_back(from[next], next);
            cur = next;
        }
    }

    Point lo(d, kInf), hi(d, -kInf);
    for (const auto& p : points)
        for (size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    const double diameter = std::sqrt(dist2(lo, hi));

    Clustering out;
    out.assignment.assign(n, 0);
    if (diameter == 0) {
        out.count = 1;
        return out;
    }

    double smallest = kInf;
    for (double e : edges)
        if (e > 0) smallest = std::min(smallest, e);
    if (!(smallest < diameter)) smallest = diameter * 1e-3;
    auto count_at = [&](double t) {
        return 1 + static_cast<size_t>(std::count_if(edges.begin(), edges.end(), [t](double e) { return e > t; }));
    };
    const size_t steps = std::max<size_t>(options.grid_steps, 2);
    for (size_t k = 0; k < steps; ++k) {
        double t = diameter * std::pow(smallest / diameter, static_cast<double>(k) / static_cast<double>(steps - 1));
        out.sweep.push_back({t, count_at(t)});
    }

    const double max_count = std::max(1.0, options.max_fraction * static_cast<double>(n));
    bool found = false;
    for (size_t k = 0; k < steps && !found;) {
        size_t l = k;
        while (l + 1 < steps && out.sweep[l + 1].count == out.sweep[k].count) ++l;
        double ratio = out.sweep[k].threshold / out.sweep[l].threshold;
        if (ratio >= options.plateau_factor && static_cast<double>(out.sweep[k].count) <= max_count) {
            out.count = out.sweep[k].count;
            out.plateau_high = out.sweep[k].threshold;
            out.plateau_low = out.sweep[l].threshold;
            out.threshold = std::sqrt(out.plateau_high * out.plateau_low);
            found = true;
        }
        k = l + 1;
    }
    if (!found) throw Error(ErrorKind::NoPlateau, "cluster count never stabilizes over the threshold sweep");

    UnionFind uf(n);
    for (size_t e = 0; e < edges.size(); ++e)
        if (edges[e] <= out.threshold) uf.unite(edge_ends[e].first, edge_ends[e].second);
    std::map<size_t, size_t> ids;
    for (size_t i = 0; i < n; ++i) {
        auto [it, inserted] = ids.emplace(uf.find(i), ids.size());
        out.assignment[i] = it->second;
    }
    return out;
}

Extraction extract_problem(const Orbit& orbit, const Clustering& clusters, const PiecewiseAffineMap& map,
                           const std::vector<SymmetryTransform>& symmetries, const ExtractOptions& options) {
    const size_t n = orbit.points.size();
    if (clusters.assignment.size() != n) throw Error(ErrorKind::DimensionMismatch, "clustering does not match orbit");
    const size_t d = map.dim();
    const double reach = clusters.threshold;

    std::vector<std::pair<std::string, Matrix>> syms{{"id", identity_matrix(d)}};
    for (const auto& s : symmetries)
        if (s.name != "id") syms.emplace_back(s.name, s.linear);

    const size_t count = clusters.count;
    std::vector<std::vector<size_t>> members(count);
    for (size_t i = 0; i < n; ++i) members[clusters.assignment[i]].push_back(i);
    std::vector<std::vector<Point>> cloud(count);
    for (size_t c = 0; c < count; ++c)
        for (size_t i : members[c]) cloud[c].push_back(orbit.points[i]);
    auto image_of = [&](size_t s, const std::vector<Point>& pts) {
        std::vector<Point> out;
        for (const auto& p : pts) out.push_back(torus_apply(syms[s].second, p));
        return out;
    };
    auto same_set = [&](const std::vector<Point>& a, const std::vector<Point>& b) {
        return directed_distance(a, b) <= reach && directed_distance(b, a) <= reach;
    };

    // Cluster order: anchor cluster first, then by first appearance.
    std::vector<size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    if (options.anchor) {
        size_t nearest = 0;
        double best = kInf;
        for (size_t i = 0; i < n; ++i) {
            double dd = dist2(orbit.points[i], *options.anchor);
            if (dd < best) {
                best = dd;
                nearest = i;
            }
        }
        size_t first = clusters.assignment[nearest];
        std::rotate(order.begin(), std::find(order.begin(), order.end(), first), std::find(order.begin(), order.end(), first) + 1);
    }

    ClusterReport report;
    report.clustering = clusters;
    report.clusters.resize(count);
    for (size_t c = 0; c < count; ++c) {
        report.clusters[c].size = members[c].size();
        std::map<AtomLabel, size_t> hits;
        for (size_t i : members[c]) ++hits[orbit.labels[i]];
        report.clusters[c].hits.assign(hits.begin(), hits.end());
    }

    // Fold clusters that are symmetry images of earlier representatives.
    std::vector<size_t> rep_of_cluster(count, count);
    for (size_t c : order) {
        bool folded = false;
        for (size_t r = 0; r < report.representatives.size() && !folded; ++r) {
            size_t rc = report.representatives[r];
            for (size_t s = 1; s < syms.size() && !folded; ++s) {
                if (!same_set(image_of(s, cloud[rc]), cloud[c])) continue;
                report.clusters[c].representative = r;
                report.clusters[c].sym = syms[s].first;
                folded = true;
            }
        }
        if (!folded) {
            report.clusters[c].representative = report.representatives.size();
            report.representatives.push_back(c);
        }
    }

    // Candidate targets sym(K_r), deduplicated with the earlier (identity-first) entry winning.
    struct Target {
        size_t rep;
        size_t sym;
        std::vector<Point> points;
    };
    std::vector<Target> targets;
    for (size_t s = 0; s < syms.size(); ++s)
        for (size_t r = 0; r < report.representatives.size(); ++r) {
            auto pts = image_of(s, cloud[report.representatives[r]]);
            bool dup = std::any_of(targets.begin(), targets.end(), [&](const Target& t) { return same_set(t.points, pts); });
            if (!dup) targets.push_back({r, s, std::move(pts)});
        }
    std::stable_sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) { return a.rep < b.rep; });

    ConditioningProblem problem;
    problem.q = report.representatives.size();
    problem.localisation.resize(problem.q);
    for (size_t k = 0; k < problem.q; ++k) {
        const auto& pts = cloud[report.representatives[k]];
        for (size_t s = 1; s < syms.size(); ++s)
            if (same_set(image_of(s, pts), pts)) problem.self_symmetry.push_back({k, syms[s].first});
    }
    for (size_t k = 0; k < problem.q; ++k) {
        const auto& info = report.clusters[report.representatives[k]];
        for (const auto& [label, hits] : info.hits) {
            if (hits < options.min_hits) continue;
            problem.localisation[k].push_back(label);

            std::vector<Point> images;
            for (size_t i : members[report.representatives[k]]) {
                if (orbit.labels[i] != label) continue;
                Point y(d);
                const auto& at = map.atom(label);
                for (size_t j = 0; j < d; ++j)
                    y[j] = map.expansion().get_d() * orbit.points[i][j] + at.offset[j].get_d();
                images.push_back(std::move(y));
            }

            std::vector<double> scores;
            for (const auto& t : targets) scores.push_back(directed_distance(images, t.points));
            size_t best = static_cast<size_t>(std::min_element(scores.begin(), scores.end()) - scores.begin());
            double runner_up = kInf;
            for (size_t t = 0; t < scores.size(); ++t)
                if (t != best) runner_up = std::min(runner_up, scores[t]);
            const std::string where = "cluster " + std::to_string(k + 1) + ", atom " + label;
            if (scores[best] > reach) {
                bool all_near_some = std::all_of(images.begin(), images.end(), [&](const Point& y) {
                    return std::any_of(targets.begin(), targets.end(),
                                       [&](const Target& t) { return nearest_distance(y, t.points) <= reach; });
                });
                if (all_near_some) throw Error(ErrorKind::AmbiguousTransition, "images split across clusters (" + where + ")");
                throw Error(ErrorKind::UnassignedImage, "images far from every cluster (" + where + ")");
            }
            if (runner_up < options.winner_factor * scores[best] && runner_up <= reach)
                throw Error(ErrorKind::AmbiguousTransition, "no unique target (" + where + ")");

            const Target& t = targets[best];
            Transition tr;
            tr.k = k;
            tr.atom = label;
            tr.to = t.rep;
            tr.sym = syms[t.sym].first;
            tr.equality = directed_distance(t.points, images) <= reach;
            problem.transitions.push_back(std::move(tr));
        }
    }
    return {std::move(problem), std::move(report)};
}

}  // namespace iup
