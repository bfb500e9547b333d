#pragma once

#include "nashbound/common.hpp"
#include "nashbound/rng.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace nashbound::geometry {

enum class SetKind { box, ball };

// Compact convex action space: an axis-aligned box or a Euclidean ball.
class ConstraintSet {
  public:
    static ConstraintSet box(Vector lower, Vector upper);
    static ConstraintSet ball(Vector center, double radius);

    SetKind kind() const { return kind_; }
    int dimension() const { return dim_; }

    const Vector& lower() const;
    const Vector& upper() const;
    const Vector& center() const;
    double radius() const;

    bool contains(const Vector& x, double tol = 1e-12) const;
    Vector project(const Vector& x) const;
    // Distance from x to the boundary; negative outside the set.
    double interior_margin(const Vector& x) const;

    double volume() const;
    double surface_area() const;

    Vector centroid() const;
    Vector bounding_box_lower() const;
    Vector bounding_box_upper() const;

    // Uniform draw from the set.
    Vector sample_uniform(Rng& rng) const;

    nlohmann::json to_json() const;
    static ConstraintSet from_json(const nlohmann::json& j);

  private:
    ConstraintSet() = default;
    SetKind kind_ = SetKind::box;
    int dim_ = 0;
    Vector lower_, upper_;   // box
    Vector center_;          // ball
    double radius_ = 0.0;    // ball
};

enum class PackingMethod { greedy, lattice };

// A 2eps-distinguishable subset of a constraint set.
struct PackingResult {
    std::vector<Vector> points;
    double epsilon = 0.0;
    PackingMethod method = PackingMethod::greedy;

    std::size_t count() const { return points.size(); }
    double min_pairwise_distance() const;
    // All points inside S and pairwise separation above 2*epsilon (up to a
    // relative floating slack for constructions that sit exactly on 2eps).
    bool valid(const ConstraintSet& S) const;

    nlohmann::json to_json() const;
};

// Farthest-point insertion over a sampled candidate pool, best of `restarts`
// runs. Deterministic given the seed. The count is a lower estimate of the
// maximal 2eps-distinguishable cardinality.
PackingResult greedy_packing(const ConstraintSet& S, double epsilon, std::uint64_t seed,
                             int restarts, int pool_size = 8192);

// Points of the 2eps grid lattice that lie in S. Boxes anchor the lattice at
// the lower corner, balls at the center.
std::vector<Vector> lattice_points(const ConstraintSet& S, double epsilon,
                                   long long budget = 50'000'000);
long long lattice_count(const ConstraintSet& S, double epsilon, long long budget = 50'000'000);

// (1/2eps)^N * (Vol(S) - eps * P(S)); may be <= 0 for large eps (vacuous).
double lattice_lower_bound(const ConstraintSet& S, double epsilon);

// ln(max(greedy count, lattice count, 1)), in nats. A lower estimate of the
// log-cardinality of maximal 2eps-distinguishable subsets.
double kolmogorov_capacity_estimate(const ConstraintSet& S, double epsilon);

// Vol(S) * P(B)^{N/(N-1)} / (Vol(B) * P(S)^{N/(N-1)}); equals 1 exactly for
// balls and is < 1 for every other convex body.
double isoperimetric_ratio(const ConstraintSet& S);
bool isoperimetric_check(const ConstraintSet& S);

}  // namespace nashbound::geometry
