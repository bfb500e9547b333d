#include "nashbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nashbound::geometry {

namespace {

double unit_ball_volume(int n) {
    // pi^{n/2} / Gamma(n/2 + 1)
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) {
    // Surface area of the unit (n-1)-sphere in R^n.
    return n * unit_ball_volume(n);
}

}  // namespace

ConstraintSet ConstraintSet::box(Vector lower, Vector upper) {
    if (lower.size() == 0 || lower.size() != upper.size())
        throw InvalidArgument("ConstraintSet::box: lower/upper must be nonempty and equal length");
    for (int i = 0; i < lower.size(); ++i)
        if (!(lower[i] < upper[i]))
            throw InvalidArgument("ConstraintSet::box: requires lower[i] < upper[i] (axis " +
                                  std::to_string(i) + ")");
    ConstraintSet s;
    s.kind_ = SetKind::box;
    s.dim_ = static_cast<int>(lower.size());
    s.lower_ = std::move(lower);
    s.upper_ = std::move(upper);
    return s;
}

ConstraintSet ConstraintSet::ball(Vector center, double radius) {
    if (center.size() == 0) throw InvalidArgument("ConstraintSet::ball: empty center");
    if (!(radius > 0.0)) throw InvalidArgument("ConstraintSet::ball: requires radius > 0");
    ConstraintSet s;
    s.kind_ = SetKind::ball;
    s.dim_ = static_cast<int>(center.size());
    s.center_ = std::move(center);
    s.radius_ = radius;
    return s;
}

const Vector& ConstraintSet::lower() const {
    if (kind_ != SetKind::box) throw InvalidArgument("lower(): not a box");
    return lower_;
}
const Vector& ConstraintSet::upper() const {
    if (kind_ != SetKind::box) throw InvalidArgument("upper(): not a box");
    return upper_;
}
const Vector& ConstraintSet::center() const {
    if (kind_ != SetKind::ball) throw InvalidArgument("center(): not a ball");
    return center_;
}
double ConstraintSet::radius() const {
    if (kind_ != SetKind::ball) throw InvalidArgument("radius(): not a ball");
    return radius_;
}

bool ConstraintSet::contains(const Vector& x, double tol) const {
    if (x.size() != dim_) return false;
    if (kind_ == SetKind::box) {
        for (int i = 0; i < dim_; ++i)
            if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
        return true;
    }
    return (x - center_).norm() <= radius_ + tol;
}

Vector ConstraintSet::project(const Vector& x) const {
    if (x.size() != dim_) throw InvalidArgument("project: dimension mismatch");
    if (kind_ == SetKind::box) {
        Vector p = x;
        for (int i = 0; i < dim_; ++i) p[i] = std::clamp(p[i], lower_[i], upper_[i]);
        return p;
    }
    const Vector d = x - center_;
    const double n = d.norm();
    if (n <= radius_) return x;
    return center_ + d * (radius_ / n);
}

double ConstraintSet::interior_margin(const Vector& x) const {
    if (kind_ == SetKind::box) {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dim_; ++i) m = std::min({m, x[i] - lower_[i], upper_[i] - x[i]});
        return m;
    }
    return radius_ - (x - center_).norm();
}

double ConstraintSet::volume() const {
    if (kind_ == SetKind::box) return (upper_ - lower_).prod();
    return unit_ball_volume(dim_) * std::pow(radius_, dim_);
}

double ConstraintSet::surface_area() const {
    if (kind_ == SetKind::box) {
        // Sum of facet areas: 2 * sum_i prod_{j != i} extent_j.
        double total = 0.0;
        for (int i = 0; i < dim_; ++i) {
            double facet = 1.0;
            for (int j = 0; j < dim_; ++j)
                if (j != i) facet *= upper_[j] - lower_[j];
            total += 2.0 * facet;
        }
        return total;
    }
    return unit_sphere_area(dim_) * std::pow(radius_, dim_ - 1);
}

Vector ConstraintSet::centroid() const {
    if (kind_ == SetKind::box) return 0.5 * (lower_ + upper_);
    return center_;
}

Vector ConstraintSet::bounding_box_lower() const {
    if (kind_ == SetKind::box) return lower_;
    return center_.array() - radius_;
}

Vector ConstraintSet::bounding_box_upper() const {
    if (kind_ == SetKind::box) return upper_;
    return center_.array() + radius_;
}

Vector ConstraintSet::sample_uniform(Rng& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (kind_ == SetKind::box) {
        Vector x(dim_);
        for (int i = 0; i < dim_; ++i) x[i] = lower_[i] + unif(rng) * (upper_[i] - lower_[i]);
        return x;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector dir(dim_);
    double norm = 0.0;
    do {
        for (int i = 0; i < dim_; ++i) dir[i] = normal(rng);
        norm = dir.norm();
    } while (norm == 0.0);
    const double r = radius_ * std::pow(unif(rng), 1.0 / dim_);
    return center_ + dir * (r / norm);
}

nlohmann::json ConstraintSet::to_json() const {
    nlohmann::json j;
    if (kind_ == SetKind::box) {
        j["type"] = "box";
        j["lower"] = std::vector<double>(lower_.begin(), lower_.end());
        j["upper"] = std::vector<double>(upper_.begin(), upper_.end());
    } else {
        j["type"] = "ball";
        j["center"] = std::vector<double>(center_.begin(), center_.end());
        j["radius"] = radius_;
    }
    return j;
}

ConstraintSet ConstraintSet::from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "box") {
        const auto lo = j.at("lower").get<std::vector<double>>();
        const auto hi = j.at("upper").get<std::vector<double>>();
        return box(Eigen::Map<const Vector>(lo.data(), static_cast<long>(lo.size())),
                   Eigen::Map<const Vector>(hi.data(), static_cast<long>(hi.size())));
    }
    if (type == "ball") {
        const auto c = j.at("center").get<std::vector<double>>();
        return ball(Eigen::Map<const Vector>(c.data(), static_cast<long>(c.size())),
                    j.at("radius").get<double>());
    }
    throw InvalidArgument("ConstraintSet::from_json: unknown type '" + type + "'");
}

double PackingResult::min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            best = std::min(best, (points[a] - points[b]).norm());
    return best;
}

bool PackingResult::valid(const ConstraintSet& S) const {
    if (points.empty()) return false;
    for (const Vector& p : points)
        if (!S.contains(p)) return false;
    if (points.size() < 2) return true;
    const double sep = 2.0 * epsilon;
    return min_pairwise_distance() > sep * (1.0 - 1e-12) - 1e-12;
}

nlohmann::json PackingResult::to_json() const {
    nlohmann::json j;
    j["epsilon"] = epsilon;
    j["method"] = method == PackingMethod::greedy ? "greedy" : "lattice";
    nlohmann::json pts = nlohmann::json::array();
    for (const Vector& p : points) pts.push_back(std::vector<double>(p.begin(), p.end()));
    j["points"] = pts;
    return j;
}

PackingResult greedy_packing(const ConstraintSet& S, double epsilon, std::uint64_t seed,
                             int restarts, int pool_size) {
    if (!(epsilon > 0.0)) throw InvalidArgument("greedy_packing: requires epsilon > 0");
    if (restarts < 1) restarts = 1;
    const double threshold = 2.0 * epsilon;

    std::vector<Vector> best;
    for (int r = 0; r < restarts; ++r) {
        Rng rng = make_rng(derive_seed(seed, {0x70616b63ULL, static_cast<std::uint64_t>(r)}));
        std::vector<Vector> pool(static_cast<std::size_t>(pool_size));
        for (auto& p : pool) p = S.sample_uniform(rng);

        // min distance from each pool point to the chosen set
        std::vector<double> mindist(pool.size(), std::numeric_limits<double>::infinity());
        std::vector<Vector> chosen;
        std::size_t first = static_cast<std::size_t>(rng() % pool.size());
        chosen.push_back(pool[first]);
        for (std::size_t i = 0; i < pool.size(); ++i)
            mindist[i] = (pool[i] - chosen.back()).norm();
        for (;;) {
            std::size_t arg = 0;
            double far = -1.0;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (mindist[i] > far) {
                    far = mindist[i];
                    arg = i;
                }
            if (!(far > threshold)) break;
            chosen.push_back(pool[arg]);
            for (std::size_t i = 0; i < pool.size(); ++i)
                mindist[i] = std::min(mindist[i], (pool[i] - chosen.back()).norm());
        }
        if (chosen.size() > best.size()) best = std::move(chosen);
    }
    return PackingResult{std::move(best), epsilon, PackingMethod::greedy};
}

std::vector<Vector> lattice_points(const ConstraintSet& S, double epsilon, long long budget) {
    if (!(epsilon > 0.0)) throw InvalidArgument("lattice_points: requires epsilon > 0");
    const int n = S.dimension();
    const double step = 2.0 * epsilon;
    const Vector lo = S.bounding_box_lower();
    const Vector hi = S.bounding_box_upper();
    // Boxes anchor the grid at the lower corner; balls at the center, so the
    // anchor itself is always a member candidate.
    const Vector anchor = S.kind() == SetKind::box ? lo : S.center();

    std::vector<long long> kmin(n), kmax(n);
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        kmin[i] = static_cast<long long>(std::ceil((lo[i] - anchor[i]) / step - 1e-9));
        kmax[i] = static_cast<long long>(std::floor((hi[i] - anchor[i]) / step + 1e-9));
        if (kmax[i] < kmin[i]) return {};
        const long long axis = kmax[i] - kmin[i] + 1;
        if (axis > budget / std::max<long long>(total, 1))
            throw EnumerationBudgetExceeded("lattice_points: grid of more than " +
                                            std::to_string(budget) + " candidates");
        total *= axis;
    }
    if (total > budget)
        throw EnumerationBudgetExceeded("lattice_points: grid of " + std::to_string(total) +
                                        " candidates exceeds budget " + std::to_string(budget));

    std::vector<Vector> out;
    std::vector<long long> k = kmin;
    Vector p(n);
    for (;;) {
        for (int i = 0; i < n; ++i) p[i] = anchor[i] + step * static_cast<double>(k[i]);
        if (S.contains(p, 1e-9)) out.push_back(p);
        int axis = 0;
        while (axis < n) {
            if (++k[axis] <= kmax[axis]) break;
            k[axis] = kmin[axis];
            ++axis;
        }
        if (axis == n) break;
    }
    return out;
}

long long lattice_count(const ConstraintSet& S, double epsilon, long long budget) {
    return static_cast<long long>(lattice_points(S, epsilon, budget).size());
}

double lattice_lower_bound(const ConstraintSet& S, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("lattice_lower_bound: requires epsilon > 0");
    const int n = S.dimension();
    return std::pow(1.0 / (2.0 * epsilon), n) * (S.volume() - epsilon * S.surface_area());
}

double kolmogorov_capacity_estimate(const ConstraintSet& S, double epsilon) {
    const PackingResult greedy = greedy_packing(S, epsilon, /*seed=*/0, /*restarts=*/8);
    long long lattice = 0;
    try {
        lattice = lattice_count(S, epsilon);
    } catch (const EnumerationBudgetExceeded&) {
        // Too fine to enumerate; the greedy estimate stands on its own.
    }
    const long long count =
        std::max<long long>({static_cast<long long>(greedy.count()), lattice, 1});
    return std::log(static_cast<double>(count));
}

double isoperimetric_ratio(const ConstraintSet& S) {
    const int n = S.dimension();
    if (n < 2) return 1.0;
    const double exponent = static_cast<double>(n) / (n - 1);
    const double vol_b = unit_ball_volume(n);
    const double area_b = unit_sphere_area(n);
    const double rhs = vol_b / std::pow(area_b, exponent) * std::pow(S.surface_area(), exponent);
    return S.volume() / rhs;
}

bool isoperimetric_check(const ConstraintSet& S) { return isoperimetric_ratio(S) <= 1.0 + 1e-9; }

}  // namespace nashbound::geometry
