#pragma once

#include "iup/maps.hpp"
#include "iup/problem.hpp"
#include "iup/symmetry.hpp"

#include <cstdint>
#include <optional>

namespace iup {

using Point = std::vector<double>;

struct SimulateOptions {
    double boundary_tol = 1e-9;
    double escape_tol = 1e-9;
};

struct Orbit {
    std::vector<Point> points;
    std::vector<AtomLabel> labels;
    Point seed;
    size_t steps = 0;
    size_t transient = 0;
    // Iterates within boundary_tol of an atom boundary; iterated but not retained.
    size_t dropped = 0;
};

// Iterates in double precision. `steps` iterates are produced after `transient` discarded ones.
Orbit simulate(const PiecewiseAffineMap& map, const Point& seed, size_t steps, size_t transient,
               const SimulateOptions& options = {});

// Uniform point in (0,1)^d from a 64-bit seed.
Point random_seed_point(size_t d, std::uint64_t seed);

struct ClusterOptions {
    double plateau_factor = 10.0;
    size_t grid_steps = 64;
    // A plateau count must not exceed this fraction of the point count.
    double max_fraction = 0.1;
};

struct SweepEntry {
    double threshold;
    size_t count;
};

struct Clustering {
    size_t count = 0;
    std::vector<size_t> assignment;
    // Linkage threshold inside the plateau; also the assignment distance for extraction.
    double threshold = 0;
    double plateau_high = 0;
    double plateau_low = 0;
    std::vector<SweepEntry> sweep;
};

// Single-linkage clustering with the plateau rule. Clusters are numbered by first appearance.
Clustering cluster(const std::vector<Point>& points, const ClusterOptions& options = {});

struct ExtractOptions {
    size_t min_hits = 5;
    double winner_factor = 10.0;
    // The representative cluster of the first class is the one containing the orbit point
    // nearest to this anchor; defaults to the cluster of the first orbit point.
    std::optional<Point> anchor;
};

struct ClusterInfo {
    size_t size = 0;
    // Index of the representative (0-based) and the symmetry mapping it onto this cluster.
    size_t representative = 0;
    std::string sym = "id";
    std::vector<std::pair<AtomLabel, size_t>> hits;
};

struct ClusterReport {
    Clustering clustering;
    std::vector<ClusterInfo> clusters;
    // Cluster index of each representative polytope.
    std::vector<size_t> representatives;
};

struct Extraction {
    ConditioningProblem problem;
    ClusterReport report;
};

// `symmetries` are torus maps x -> L x mod 1 (offsets ignored); identity is implied.
Extraction extract_problem(const Orbit& orbit, const Clustering& clusters, const PiecewiseAffineMap& map,
                           const std::vector<SymmetryTransform>& symmetries, const ExtractOptions& options = {});

}  // namespace iup
