#include "nashbound/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace nashbound;
using namespace nashbound::geometry;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

ConstraintSet unit_box(int n) {
    return ConstraintSet::box(Vector::Zero(n), Vector::Ones(n));
}

}  // namespace

TEST_CASE("volume and surface area closed forms") {
    CHECK(unit_box(2).volume() == doctest::Approx(1.0));
    CHECK(unit_box(2).surface_area() == doctest::Approx(4.0));
    CHECK(unit_box(3).surface_area() == doctest::Approx(6.0));

    const auto rect = ConstraintSet::box(vec2(0.0, 0.0), vec2(2.0, 3.0));
    CHECK(rect.volume() == doctest::Approx(6.0));

    const auto disk = ConstraintSet::ball(Vector::Zero(2), 1.0);
    CHECK(disk.volume() == doctest::Approx(std::numbers::pi));
    CHECK(disk.surface_area() == doctest::Approx(2.0 * std::numbers::pi));

    const auto ball3 = ConstraintSet::ball(Vector::Zero(3), 2.0);
    CHECK(ball3.volume() == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 8.0));
    CHECK(ball3.surface_area() == doctest::Approx(4.0 * std::numbers::pi * 4.0));
}

TEST_CASE("construction rejects degenerate sets") {
    CHECK_THROWS_AS(ConstraintSet::box(vec2(0.0, 1.0), vec2(1.0, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(ConstraintSet::ball(Vector::Zero(2), 0.0), InvalidArgument);
}

TEST_CASE("projection lands inside and is identity on members") {
    Rng rng = make_rng(11);
    const auto sets = {unit_box(3), ConstraintSet::ball(vec2(0.5, -1.0), 0.7)};
    std::normal_distribution<double> normal(0.0, 3.0);
    for (const auto& S : sets) {
        for (int trial = 0; trial < 200; ++trial) {
            Vector x(S.dimension());
            for (int i = 0; i < S.dimension(); ++i) x[i] = normal(rng);
            const Vector p = S.project(x);
            CHECK(S.contains(p, 1e-12));
            if (S.contains(x)) CHECK((S.project(x) - x).norm() == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("greedy packing: diameter-limited disk admits a single point") {
    const auto disk = ConstraintSet::ball(Vector::Zero(2), 1.0);
    const auto packing = greedy_packing(disk, 1.0, 3, 4);
    CHECK(packing.count() == 1);
    CHECK(packing.valid(disk));
}

TEST_CASE("greedy packing on the unit interval at eps=0.25") {
    // Three points pairwise more than 0.5 apart would span more than 1.
    const auto seg = ConstraintSet::box(Vector::Zero(1), Vector::Ones(1));
    const auto packing = greedy_packing(seg, 0.25, 5, 8);
    CHECK(packing.count() == 2);
    CHECK(packing.min_pairwise_distance() > 0.5);
}

TEST_CASE("greedy packing beats the volume-surface floor on the unit square") {
    const auto S = unit_box(2);
    const auto packing = greedy_packing(S, 0.05, 0, 8);
    CHECK(packing.count() >= 80);
    CHECK(packing.valid(S));
    CHECK(packing.min_pairwise_distance() > 0.1);
}

TEST_CASE("greedy packing is deterministic in the seed") {
    const auto S = unit_box(2);
    const auto a = greedy_packing(S, 0.07, 123, 4);
    const auto b = greedy_packing(S, 0.07, 123, 4);
    REQUIRE(a.count() == b.count());
    for (std::size_t i = 0; i < a.count(); ++i)
        CHECK((a.points[i] - b.points[i]).norm() == 0.0);
}

TEST_CASE("lattice counts") {
    CHECK(lattice_count(unit_box(2), 0.05) == 121);
    CHECK(lattice_count(unit_box(2), 0.1) == 36);
    CHECK(lattice_count(unit_box(1), 0.5) == 2);
    // Center-anchored grid on a small ball catches only the center.
    CHECK(lattice_count(ConstraintSet::ball(Vector::Zero(2), 0.05), 0.5) == 1);
    CHECK_THROWS_AS(lattice_count(unit_box(5), 1e-5), EnumerationBudgetExceeded);
}

TEST_CASE("lattice lower bound formula") {
    CHECK(lattice_lower_bound(unit_box(2), 0.05) == doctest::Approx(80.0));
    CHECK(lattice_lower_bound(unit_box(2), 0.25) == doctest::Approx(0.0));
    CHECK(lattice_lower_bound(unit_box(3), 0.05) == doctest::Approx(700.0));
}

TEST_CASE("lattice count dominates the lower bound when it is positive") {
    const std::pair<ConstraintSet, double> cases[] = {
        {unit_box(2), 0.05},
        {unit_box(2), 0.1},
        {unit_box(3), 0.1},
        {ConstraintSet::ball(Vector::Zero(2), 1.0), 0.1}};
    for (const auto& [S, eps] : cases) {
        const double bound = lattice_lower_bound(S, eps);
        if (bound > 0.0)
            CHECK(static_cast<double>(lattice_count(S, eps)) >= std::ceil(bound));
    }
}

TEST_CASE("capacity estimate in nats") {
    CHECK(kolmogorov_capacity_estimate(unit_box(2), 0.05) ==
          doctest::Approx(std::log(121.0)));
    CHECK(kolmogorov_capacity_estimate(ConstraintSet::ball(Vector::Zero(2), 1.0), 1.0) ==
          doctest::Approx(0.0));
    // Grid {0, 0.5, 1} has three members and beats the strict greedy pair.
    CHECK(kolmogorov_capacity_estimate(unit_box(1), 0.25) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("capacity estimate is non-increasing in eps") {
    const auto S = unit_box(2);
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.02, 0.05, 0.1, 0.2, 0.3, 0.5}) {
        const double cap = kolmogorov_capacity_estimate(S, eps);
        CHECK(cap <= prev + 1e-12);
        prev = cap;
    }
}

TEST_CASE("isoperimetric inequality: equality for balls, strict for boxes") {
    CHECK(isoperimetric_ratio(ConstraintSet::ball(Vector::Zero(2), 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(isoperimetric_ratio(ConstraintSet::ball(Vector::Ones(4), 2.5)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(isoperimetric_check(ConstraintSet::ball(Vector::Zero(2), 1.0)));

    const double r2 = isoperimetric_ratio(unit_box(2));
    CHECK(r2 < 1.0);
    CHECK(r2 == doctest::Approx(std::numbers::pi / 4.0));  // 1 / (4/pi)
    CHECK(isoperimetric_check(unit_box(2)));
    CHECK(isoperimetric_ratio(unit_box(3)) < 1.0);
    CHECK(isoperimetric_check(unit_box(3)));
}

TEST_CASE("constraint set JSON round trip") {
    const auto box = ConstraintSet::box(vec2(-1.0, 0.5), vec2(2.0, 3.5));
    const auto box2 = ConstraintSet::from_json(box.to_json());
    CHECK(box2.kind() == SetKind::box);
    CHECK((box2.lower() - box.lower()).norm() == 0.0);
    CHECK((box2.upper() - box.upper()).norm() == 0.0);
    CHECK(box.to_json()["type"] == "box");

    const auto ball = ConstraintSet::ball(vec2(0.25, -0.75), 1.5);
    const auto ball2 = ConstraintSet::from_json(ball.to_json());
    CHECK(ball2.kind() == SetKind::ball);
    CHECK(ball2.radius() == ball.radius());
    CHECK(ball.to_json()["type"] == "ball");
}

TEST_CASE("uniform sampling stays inside the set") {
    Rng rng = make_rng(99);
    const auto ball = ConstraintSet::ball(vec2(1.0, 1.0), 0.5);
    const auto box = ConstraintSet::box(vec2(-2.0, 0.0), vec2(-1.0, 4.0));
    for (int i = 0; i < 500; ++i) {
        CHECK(ball.contains(ball.sample_uniform(rng)));
        CHECK(box.contains(box.sample_uniform(rng)));
    }
}
