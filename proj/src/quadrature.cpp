#include "nashbound/quadrature.hpp"

#include "nashbound/common.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace nashbound {

namespace {

// QUADPACK dqk15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment eval_segment(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = half * kXgk[j];
        const double fsum = f(center - x) + f(center + x);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    const double diff = std::abs(kronrod - gauss);
    // Scaled error heuristic from QUADPACK; never below machine noise.
    double err = diff;
    if (diff > 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return Segment{a, b, kronrod, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_intervals) {
    if (!(b > a)) {
        if (a == b) return QuadratureResult{0.0, 0.0, 0};
        throw InvalidArgument("integrate: requires a < b");
    }
    std::priority_queue<Segment> queue;
    queue.push(eval_segment(f, a, b));
    double total_value = queue.top().value;
    double total_error = queue.top().error;
    int intervals = 1;
    while (total_error > abs_tol) {
        if (intervals >= max_intervals) {
            throw QuadratureFailure("integrate: tolerance " + std::to_string(abs_tol) +
                                    " not reached with " + std::to_string(intervals) +
                                    " intervals (error estimate " + std::to_string(total_error) + ")");
        }
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval degenerated to machine resolution; accept its estimate.
            queue.push(Segment{worst.a, worst.b, worst.value, 0.0});
            total_error -= worst.error;
            continue;
        }
        const Segment left = eval_segment(f, worst.a, mid);
        const Segment right = eval_segment(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    return QuadratureResult{total_value, total_error, intervals};
}

}  // namespace nashbound
