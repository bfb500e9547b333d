#include "nashbound/noise.hpp"

#include "nashbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace nashbound::noise {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;  // ln(2*pi)

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return s;
}

}  // namespace

NoiseModel NoiseModel::gaussian(double variance) {
    if (!(variance > 0.0)) throw InvalidArgument("NoiseModel::gaussian: requires variance > 0");
    NoiseModel m;
    m.kind_ = NoiseKind::gaussian;
    m.param_ = std::sqrt(variance);
    m.variance_ = variance;
    m.regularity = Regularity{0.0, 0.0, 0.0, 1.0};
    return m;
}

NoiseModel NoiseModel::logistic(double scale) {
    if (!(scale > 0.0)) throw InvalidArgument("NoiseModel::logistic: requires scale > 0");
    NoiseModel m;
    m.kind_ = NoiseKind::logistic;
    m.param_ = scale;
    m.variance_ = std::numbers::pi * std::numbers::pi * scale * scale / 3.0;
    // |d^3 log p| = (2/s^3)|s'(1-2s)| <= 2/s^3 with plenty of slack.
    m.regularity = Regularity{2.0 / (scale * scale * scale), 0.0, 0.0, 1.0};
    return m;
}

NoiseModel NoiseModel::tabulated(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() < 2 || grid.size() != values.size())
        throw InvalidArgument("NoiseModel::tabulated: need matching grid/values, length >= 2");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw InvalidArgument("NoiseModel::tabulated: grid must be strictly increasing");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidArgument("NoiseModel::tabulated: density values must be >= 0");

    const double mass = trapezoid(grid, values);
    if (std::abs(mass - 1.0) > 1e-8)
        throw InvalidArgument("NoiseModel::tabulated: density integrates to " +
                              std::to_string(mass) + ", not 1");
    std::vector<double> xy(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) xy[i] = grid[i] * values[i];
    const double mean = trapezoid(grid, xy);
    if (std::abs(mean) > 1e-8)
        throw InvalidArgument("NoiseModel::tabulated: mean is " + std::to_string(mean) +
                              ", not 0");
    for (std::size_t i = 0; i < grid.size(); ++i) xy[i] = grid[i] * grid[i] * values[i];

    NoiseModel m;
    m.kind_ = NoiseKind::tabulated;
    m.variance_ = trapezoid(grid, xy);
    m.param_ = std::sqrt(m.variance_);
    m.cdf_.assign(grid.size(), 0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        m.cdf_[i + 1] = m.cdf_[i] + 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
    m.grid_ = std::move(grid);
    m.values_ = std::move(values);
    m.regularity = Regularity{1.0, 1.0, 1.0, 1.0};
    return m;
}

double NoiseModel::pdf(double x) const {
    switch (kind_) {
        case NoiseKind::gaussian: {
            const double z = x / param_;
            return std::exp(-0.5 * z * z) / (param_ * std::sqrt(2.0 * std::numbers::pi));
        }
        case NoiseKind::logistic: {
            const double e = std::exp(-std::abs(x) / param_);
            const double d = 1.0 + e;
            return e / (param_ * d * d);
        }
        case NoiseKind::tabulated: {
            if (x < grid_.front() || x > grid_.back()) return 0.0;
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
            const std::size_t hi = std::min<std::size_t>(
                static_cast<std::size_t>(it - grid_.begin()), grid_.size() - 1);
            const std::size_t lo = hi - 1;
            const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
            return values_[lo] + t * (values_[hi] - values_[lo]);
        }
    }
    return 0.0;
}

double NoiseModel::log_pdf(double x) const {
    switch (kind_) {
        case NoiseKind::gaussian: {
            const double z = x / param_;
            return -0.5 * z * z - std::log(param_) - 0.5 * kLog2Pi;
        }
        case NoiseKind::logistic: {
            const double a = std::abs(x) / param_;
            // -a - log s - 2*log(1 + e^{-a}), symmetric in x.
            return -a - std::log(param_) - 2.0 * std::log1p(std::exp(-a));
        }
        case NoiseKind::tabulated: {
            const double p = pdf(x);
            return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
        }
    }
    return -std::numeric_limits<double>::infinity();
}

double NoiseModel::dlog_pdf(double x) const {
    switch (kind_) {
        case NoiseKind::gaussian:
            return -x / variance_;
        case NoiseKind::logistic: {
            // (1/s)(1 - 2*sigmoid(x/s))
            const double sig = 1.0 / (1.0 + std::exp(-x / param_));
            return (1.0 - 2.0 * sig) / param_;
        }
        case NoiseKind::tabulated: {
            if (x <= grid_.front() || x >= grid_.back()) return 0.0;
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
            const std::size_t hi = std::min<std::size_t>(
                static_cast<std::size_t>(it - grid_.begin()), grid_.size() - 1);
            const std::size_t lo = hi - 1;
            const double p = pdf(x);
            if (!(p > 0.0)) return 0.0;
            const double slope = (values_[hi] - values_[lo]) / (grid_[hi] - grid_[lo]);
            return slope / p;
        }
    }
    return 0.0;
}

double NoiseModel::sample(Rng& rng) const {
    switch (kind_) {
        case NoiseKind::gaussian: {
            std::normal_distribution<double> normal(0.0, param_);
            return normal(rng);
        }
        case NoiseKind::logistic: {
            std::uniform_real_distribution<double> unif(
                std::numeric_limits<double>::min(), 1.0);
            const double u = unif(rng);
            return param_ * std::log(u / (1.0 - u));
        }
        case NoiseKind::tabulated: {
            std::uniform_real_distribution<double> unif(0.0, cdf_.back());
            const double u = unif(rng);
            const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            std::size_t hi = std::min<std::size_t>(
                std::max<std::ptrdiff_t>(it - cdf_.begin(), 1), cdf_.size() - 1);
            const std::size_t lo = hi - 1;
            const double h = grid_[hi] - grid_[lo];
            const double p0 = values_[lo];
            const double slope = (values_[hi] - values_[lo]) / h;
            const double target = u - cdf_[lo];
            // Solve p0*t + slope*t^2/2 = target on [0, h].
            double t;
            if (std::abs(slope) < 1e-300) {
                t = p0 > 0.0 ? target / p0 : 0.5 * h;
            } else {
                const double disc = std::max(0.0, p0 * p0 + 2.0 * slope * target);
                t = (-p0 + std::sqrt(disc)) / slope;
            }
            return grid_[lo] + std::clamp(t, 0.0, h);
        }
    }
    return 0.0;
}

double NoiseModel::tail_prob(double x) const {
    if (x <= 0.0) return 1.0;
    switch (kind_) {
        case NoiseKind::gaussian:
            return std::erfc(x / (param_ * std::numbers::sqrt2));
        case NoiseKind::logistic:
            return 2.0 / (1.0 + std::exp(x / param_));
        case NoiseKind::tabulated: {
            double mass = 0.0;
            for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
                const double a = grid_[i], b = grid_[i + 1];
                if (b <= -x || a >= x) {
                    mass += 0.5 * (values_[i] + values_[i + 1]) * (b - a);
                } else if (a < -x && b > -x) {
                    const double t = (-x - a) / (b - a);
                    const double vm = values_[i] + t * (values_[i + 1] - values_[i]);
                    mass += 0.5 * (values_[i] + vm) * (-x - a);
                } else if (a < x && b > x) {
                    const double t = (x - a) / (b - a);
                    const double vm = values_[i] + t * (values_[i + 1] - values_[i]);
                    mass += 0.5 * (vm + values_[i + 1]) * (b - x);
                }
            }
            return std::min(1.0, mass);
        }
    }
    return 0.0;
}

double NoiseModel::support_halfwidth(double mass) const {
    if (!(mass > 0.0) || mass >= 1.0)
        throw InvalidArgument("support_halfwidth: mass must lie in (0,1)");
    if (kind_ == NoiseKind::tabulated)
        return std::max(std::abs(grid_.front()), std::abs(grid_.back()));
    if (kind_ == NoiseKind::logistic) return param_ * std::log(std::max(2.0 / mass - 1.0, 1.0));
    double lo = 0.0, hi = 64.0 * param_;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * param_; ++it) {
        const double mid = 0.5 * (lo + hi);
        (tail_prob(mid) > mass ? lo : hi) = mid;
    }
    return hi;
}

double NoiseModel::entropy() const {
    switch (kind_) {
        case NoiseKind::gaussian:
            return 0.5 * (1.0 + kLog2Pi + std::log(variance_));
        case NoiseKind::logistic:
            return std::log(param_) + 2.0;
        case NoiseKind::tabulated: {
            double h = 0.0;
            for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
                const double a = grid_[i], b = grid_[i + 1];
                h -= integrate(
                         [this](double x) {
                             const double p = pdf(x);
                             return p > 0.0 ? p * std::log(p) : 0.0;
                         },
                         a, b, 1e-11)
                         .value;
            }
            return h;
        }
    }
    return 0.0;
}

nlohmann::json NoiseModel::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case NoiseKind::gaussian:
            j["type"] = "gaussian";
            j["variance"] = variance_;
            break;
        case NoiseKind::logistic:
            j["type"] = "logistic";
            j["scale"] = param_;
            break;
        case NoiseKind::tabulated:
            j["type"] = "tabulated";
            j["grid"] = grid_;
            j["values"] = values_;
            break;
    }
    return j;
}

NoiseModel NoiseModel::from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "gaussian") return gaussian(j.at("variance").get<double>());
    if (type == "logistic") return logistic(j.at("scale").get<double>());
    if (type == "tabulated")
        return tabulated(j.at("grid").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>());
    throw InvalidArgument("NoiseModel::from_json: unknown type '" + type + "'");
}

double fisher_information(const NoiseModel& model, double abs_tol) {
    const auto integrand = [&model](double x) {
        const double p = model.pdf(x);
        if (!(p > 0.0)) return 0.0;
        const double d = model.dlog_pdf(x);
        const double v = d * d * p;
        if (!std::isfinite(v))
            throw QuadratureFailure("fisher_information: divergent integrand at x=" +
                                    std::to_string(x));
        return v;
    };
    double value = 0.0;
    if (model.kind() == NoiseKind::tabulated) {
        // Piecewise-linear density has kinks at the knots; integrate segment
        // by segment where it is smooth.
        const nlohmann::json j = model.to_json();
        const auto grid = j.at("grid").get<std::vector<double>>();
        const auto vals = j.at("values").get<std::vector<double>>();
        const double seg_tol = abs_tol / static_cast<double>(grid.size());
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const bool edge = vals[i] == 0.0 || vals[i + 1] == 0.0;
            if (edge && vals[i] != vals[i + 1])
                throw QuadratureFailure(
                    "fisher_information: density reaches zero with nonzero slope; the "
                    "information integral diverges");
            value += integrate(integrand, grid[i], grid[i + 1], std::max(seg_tol, 1e-13)).value;
        }
    } else {
        const double c = model.support_halfwidth(1e-15);
        value = integrate(integrand, -c, c, abs_tol).value;
    }
    if (!(value > 0.0)) throw QuadratureFailure("fisher_information: non-positive result");
    return value;
}

RegularityReport check_regularity(const NoiseModel& model, const std::vector<double>& probes) {
    if (probes.empty()) throw InvalidArgument("check_regularity: no probe points");
    RegularityReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();
    const Regularity& reg = model.regularity;
    const double numeric_tol = 1e-6;
    const double h = 5e-3 * std::max(1.0, std::sqrt(model.variance()));

    for (double x : probes) {
        if (!(model.pdf(x) > 0.0))
            throw RegularityViolatedError("check_regularity: density vanishes at probe x=" +
                                          std::to_string(x));
        bool finite = true;
        const double fm2 = model.log_pdf(x - 2 * h), fm1 = model.log_pdf(x - h);
        const double fp1 = model.log_pdf(x + h), fp2 = model.log_pdf(x + 2 * h);
        for (double v : {fm2, fm1, fp1, fp2}) finite = finite && std::isfinite(v);
        if (!finite)
            throw RegularityViolatedError(
                "check_regularity: density vanishes near probe x=" + std::to_string(x));
        const double d3 = (-fm2 + 2.0 * fm1 - 2.0 * fp1 + fp2) / (2.0 * h * h * h);
        const double bound = reg.beta1 + reg.beta2 * std::pow(std::abs(x), reg.beta3);
        report.max_abs_third_derivative = std::max(report.max_abs_third_derivative, std::abs(d3));
        report.worst_margin = std::min(report.worst_margin, bound + numeric_tol - std::abs(d3));
        if (std::abs(d3) > bound + numeric_tol)
            throw RegularityViolatedError(
                "check_regularity: |d3 log p| = " + std::to_string(std::abs(d3)) +
                " exceeds envelope " + std::to_string(bound) + " at probe x=" + std::to_string(x));
    }

    // Tail statistic x^(beta3+1+r) * P(|V| >= x) must decay across the tail.
    const double c = model.kind() == NoiseKind::tabulated
                         ? model.support_halfwidth(0.5)
                         : model.support_halfwidth(1e-6);
    const double power = reg.beta3 + 1.0 + reg.r;
    for (int t = 0; t < 5; ++t) {
        const double x = c * (1.0 + 0.25 * t);
        report.tail_statistic.push_back(std::pow(x, power) * model.tail_prob(x));
    }
    for (std::size_t t = 0; t + 1 < report.tail_statistic.size(); ++t) {
        if (report.tail_statistic[t + 1] > report.tail_statistic[t] * (1.0 + 1e-9))
            throw RegularityViolatedError(
                "check_regularity: tail statistic fails to decay at tail point " +
                std::to_string(t + 1));
    }
    report.passed = true;
    report.message = "envelope and tail conditions hold at all probes";
    return report;
}

WaterFilling water_filling(const std::vector<double>& variances, double alpha) {
    if (variances.empty()) throw InvalidArgument("water_filling: no channels");
    if (!(alpha >= 0.0)) throw InvalidArgument("water_filling: requires alpha >= 0");
    for (double v : variances)
        if (!(v > 0.0)) throw InvalidArgument("water_filling: requires variances > 0");

    const std::size_t n = variances.size();
    std::vector<double> sorted = variances;
    std::sort(sorted.begin(), sorted.end());

    WaterFilling wf;
    wf.allocation.assign(n, 0.0);
    if (alpha == 0.0) {
        wf.level = sorted.front();
        return wf;
    }
    // Fill the k cheapest channels to a common level.
    double level = 0.0;
    double prefix = 0.0;
    std::size_t active = n;
    for (std::size_t k = 1; k <= n; ++k) {
        prefix += sorted[k - 1];
        const double mu = (alpha + prefix) / static_cast<double>(k);
        if (k == n || mu <= sorted[k]) {
            level = mu;
            active = k;
            break;
        }
    }
    (void)active;
    wf.level = level;
    for (std::size_t i = 0; i < n; ++i) {
        wf.allocation[i] = std::max(level - variances[i], 0.0);
        if (wf.allocation[i] > 0.0)
            wf.capacity += 0.5 * std::log1p(wf.allocation[i] / variances[i]);
    }
    return wf;
}

double downlink_capacity(const std::vector<double>& variances, double alpha) {
    return water_filling(variances, alpha).capacity;
}

void Topology::validate() const {
    if (players < 1) throw InvalidArgument("topology: players must be >= 1");
    if (constraints < 0) throw InvalidArgument("topology: constraints must be >= 0");
    if (usn_count < 1 || usn_count > players)
        throw InvalidArgument("topology: requires 1 <= usn_count <= players");
    if (constraints > 0 && (csn_count < 1 || csn_count > constraints))
        throw InvalidArgument("topology: requires 1 <= csn_count <= constraints");
    if (static_cast<int>(usn_of_player.size()) != players)
        throw InvalidArgument("topology: usn_of_player must have one entry per player");
    if (static_cast<int>(csn_of_constraint.size()) != constraints)
        throw InvalidArgument("topology: csn_of_constraint must have one entry per constraint");
    for (int i = 0; i < players; ++i) {
        const int l = usn_of_player[i];
        if (l < 0 || l >= usn_count)
            throw InvalidArgument("topology: usn_of_player[" + std::to_string(i) +
                                  "] out of range");
        const auto& members = usn_members.at(static_cast<std::size_t>(l));
        if (std::find(members.begin(), members.end(), i) == members.end())
            throw InvalidArgument("topology: player " + std::to_string(i) +
                                  " is not a member of its own USN");
    }
    for (int p = 0; p < constraints; ++p) {
        const int c = csn_of_constraint[p];
        if (c < 0 || c >= csn_count)
            throw InvalidArgument("topology: csn_of_constraint[" + std::to_string(p) +
                                  "] out of range");
    }
    if (static_cast<int>(usn_members.size()) != usn_count)
        throw InvalidArgument("topology: usn_members must have one entry per USN");
    if (static_cast<int>(csn_members.size()) != csn_count)
        throw InvalidArgument("topology: csn_members must have one entry per CSN");
    if (static_cast<int>(constraints_of_player.size()) != players)
        throw InvalidArgument("topology: constraints_of_player must have one entry per player");
    for (const auto& deps : constraints_of_player)
        for (int p : deps)
            if (p < 0 || p >= constraints)
                throw InvalidArgument("topology: constraint dependency out of range");
}

Topology Topology::shared(int players, int constraints) {
    Topology t;
    t.players = players;
    t.constraints = constraints;
    t.usn_count = 1;
    t.csn_count = constraints > 0 ? 1 : 0;
    t.usn_of_player.assign(players, 0);
    t.csn_of_constraint.assign(constraints, 0);
    std::vector<int> all(players);
    std::iota(all.begin(), all.end(), 0);
    t.usn_members = {all};
    if (constraints > 0) t.csn_members = {all};
    std::vector<int> deps(constraints);
    std::iota(deps.begin(), deps.end(), 0);
    t.constraints_of_player.assign(players, deps);
    t.validate();
    return t;
}

Topology Topology::split_usn(int players, int constraints) {
    Topology t = shared(players, constraints);
    t.usn_count = players;
    t.usn_members.clear();
    std::vector<int> all(players);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < players; ++i) {
        t.usn_of_player[i] = i;
        t.usn_members.push_back(all);
    }
    t.validate();
    return t;
}

nlohmann::json Topology::to_json() const {
    nlohmann::json j;
    j["players"] = players;
    j["constraints"] = constraints;
    j["usn_count"] = usn_count;
    j["csn_count"] = csn_count;
    j["usn_of_player"] = usn_of_player;
    j["csn_of_constraint"] = csn_of_constraint;
    return j;
}

Topology Topology::from_json(const nlohmann::json& j) {
    const int players = j.at("players").get<int>();
    const int constraints = j.value("constraints", 0);
    Topology t = Topology::shared(std::max(players, 1), constraints);
    t.players = players;
    if (j.contains("usn_of_player")) {
        t.usn_of_player = j.at("usn_of_player").get<std::vector<int>>();
        t.usn_count = j.value("usn_count",
                              t.usn_of_player.empty()
                                  ? 1
                                  : *std::max_element(t.usn_of_player.begin(),
                                                      t.usn_of_player.end()) + 1);
        std::vector<int> all(players);
        std::iota(all.begin(), all.end(), 0);
        t.usn_members.assign(static_cast<std::size_t>(std::max(t.usn_count, 1)), all);
    }
    if (j.contains("csn_of_constraint")) {
        t.csn_of_constraint = j.at("csn_of_constraint").get<std::vector<int>>();
        t.csn_count = j.value("csn_count",
                              t.csn_of_constraint.empty()
                                  ? 0
                                  : *std::max_element(t.csn_of_constraint.begin(),
                                                      t.csn_of_constraint.end()) + 1);
        std::vector<int> all(players);
        std::iota(all.begin(), all.end(), 0);
        t.csn_members.assign(static_cast<std::size_t>(std::max(t.csn_count, 0)), all);
    }
    t.validate();
    return t;
}

int constraint_count(const geometry::ConstraintSet& S) {
    return S.kind() == geometry::SetKind::box ? 2 * S.dimension() : 1;
}

Topology default_topology(const geometry::ConstraintSet& S, bool shared_usn) {
    const int n = S.dimension();
    const int L = constraint_count(S);
    Topology t = shared_usn ? Topology::shared(n, L) : Topology::split_usn(n, L);
    if (S.kind() == geometry::SetKind::box) {
        // Constraint 2i is the lower bound of coordinate i, 2i+1 the upper.
        for (int i = 0; i < n; ++i) t.constraints_of_player[i] = {2 * i, 2 * i + 1};
    }
    t.validate();
    return t;
}

void ChannelConfig::validate(const Topology& topo) const {
    if (static_cast<int>(uplink_usn_var.size()) != topo.usn_count)
        throw InvalidArgument("channels: uplink_usn_var must have one entry per USN");
    if (static_cast<int>(uplink_csn_var.size()) != topo.csn_count)
        throw InvalidArgument("channels: uplink_csn_var must have one entry per CSN");
    if (static_cast<int>(downlink.size()) != topo.players)
        throw InvalidArgument("channels: downlink must have one entry per player");
    for (double v : uplink_usn_var)
        if (!(v >= 0.0)) throw InvalidArgument("channels: uplink variances must be >= 0");
    for (double v : uplink_csn_var)
        if (!(v >= 0.0)) throw InvalidArgument("channels: uplink variances must be >= 0");
    if (!(alpha >= 0.0)) throw InvalidArgument("channels: alpha must be >= 0");
}

double ChannelConfig::downlink_variance(int player) const {
    const auto& m = downlink.at(static_cast<std::size_t>(player));
    return m ? m->variance() : 0.0;
}

double ChannelConfig::min_downlink_variance() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& m : downlink) v = std::min(v, m ? m->variance() : 0.0);
    return v;
}

bool ChannelConfig::all_downlink_gaussian() const {
    return std::all_of(downlink.begin(), downlink.end(), [](const auto& m) {
        return m && m->kind() == NoiseKind::gaussian;
    });
}

bool ChannelConfig::uplink_noiseless() const {
    const auto zero = [](double v) { return v == 0.0; };
    return std::all_of(uplink_usn_var.begin(), uplink_usn_var.end(), zero) &&
           std::all_of(uplink_csn_var.begin(), uplink_csn_var.end(), zero);
}

ChannelConfig ChannelConfig::gaussian(const Topology& topo, double usn_var, double csn_var,
                                      double downlink_var, double alpha) {
    ChannelConfig cfg;
    cfg.uplink_usn_var.assign(static_cast<std::size_t>(topo.usn_count), usn_var);
    cfg.uplink_csn_var.assign(static_cast<std::size_t>(topo.csn_count), csn_var);
    for (int i = 0; i < topo.players; ++i) {
        if (downlink_var > 0.0)
            cfg.downlink.emplace_back(NoiseModel::gaussian(downlink_var));
        else
            cfg.downlink.emplace_back(std::nullopt);
    }
    cfg.alpha = alpha;
    cfg.validate(topo);
    return cfg;
}

nlohmann::json ChannelConfig::to_json() const {
    nlohmann::json j;
    j["uplink_usn_var"] = uplink_usn_var;
    j["uplink_csn_var"] = uplink_csn_var;
    nlohmann::json dl = nlohmann::json::array();
    for (const auto& m : downlink) {
        if (m)
            dl.push_back(m->to_json());
        else
            dl.push_back(nlohmann::json{{"type", "none"}});
    }
    j["downlink"] = dl;
    j["alpha"] = alpha;
    return j;
}

ChannelConfig ChannelConfig::from_json(const nlohmann::json& j) {
    ChannelConfig cfg;
    cfg.uplink_usn_var = j.at("uplink_usn_var").get<std::vector<double>>();
    cfg.uplink_csn_var = j.value("uplink_csn_var", std::vector<double>{});
    for (const auto& d : j.at("downlink")) {
        if (d.at("type").get<std::string>() == "none")
            cfg.downlink.emplace_back(std::nullopt);
        else
            cfg.downlink.emplace_back(NoiseModel::from_json(d));
    }
    cfg.alpha = j.value("alpha", 0.0);
    return cfg;
}

Matrix covariance_sigma_AG(const Matrix& A, const Topology& topo, const ChannelConfig& cfg) {
    const int n = topo.players;
    if (A.rows() != n || A.cols() != n)
        throw InvalidArgument("covariance_sigma_AG: A dimension mismatch");
    if (A != A.transpose()) throw InvalidArgument("covariance_sigma_AG: A must be symmetric");
    cfg.validate(topo);
    const Matrix AA = A * A;
    Matrix sigma = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) {
            if (topo.usn_of_player[i] != topo.usn_of_player[t]) continue;
            const double usn_var = cfg.uplink_usn_var[static_cast<std::size_t>(
                topo.usn_of_player[i])];
            sigma(i, t) = usn_var * AA(i, t);
        }
        sigma(i, i) += cfg.downlink_variance(i);
    }
    return sigma;
}

double min_variance_bound(const Matrix& A, const Topology& topo, const ChannelConfig& cfg) {
    const Matrix sigma = covariance_sigma_AG(A, topo, cfg);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma, Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    const double floor = cfg.min_downlink_variance();
    if (lambda_min < floor - 1e-9)
        throw std::runtime_error("min_variance_bound: eigenvalue floor violated (lambda_min=" +
                                 std::to_string(lambda_min) + ", floor=" + std::to_string(floor) +
                                 ")");
    return lambda_min;
}

}  // namespace nashbound::noise
