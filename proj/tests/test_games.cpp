#include "nashbound/games.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nashbound;
using namespace nashbound::games;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

geometry::ConstraintSet unit_box2() {
    return geometry::ConstraintSet::box(Vector::Zero(2), Vector::Ones(2));
}

geometry::ConstraintSet sym_box(int n, double half) {
    return geometry::ConstraintSet::box(Vector::Constant(n, -half), Vector::Constant(n, half));
}

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

// Random symmetric negative definite matrix with eigenvalues in [-3, -0.1].
Matrix random_neg_def(int n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix Q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q(i, j) = normal(rng);
    const Eigen::HouseholderQR<Matrix> qr(Q);
    const Matrix orth = qr.householderQ();
    std::uniform_real_distribution<double> ev(0.1, 3.0);
    Vector lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = -ev(rng);
    Matrix A = orth * lambda.asDiagonal() * orth.transpose();
    // Exact entrywise symmetry, as the game type requires.
    A = 0.5 * (A + Matrix(A.transpose()));
    return A;
}

}  // namespace

TEST_CASE("construction validates curvature and membership") {
    const auto game = build_quadratic_game(-Matrix::Identity(2, 2), vec2(0.3, 0.4), unit_box2());
    CHECK(game.pseudo_gradient(game.nash_point()).norm() < 1e-12);

    // eigenvalues -1 and -3
    CHECK_NOTHROW(build_quadratic_game(mat2(-2, 1, 1, -2), vec2(0.0, 0.0), sym_box(2, 1.0)));

    CHECK_THROWS_AS(build_quadratic_game(mat2(1, 0, 0, -1), vec2(0.5, 0.5), unit_box2()),
                    NotNegativeDefiniteError);
    CHECK_THROWS_AS(build_quadratic_game(mat2(-1, 0.5, 0.25, -1), vec2(0.5, 0.5), unit_box2()),
                    NotNegativeDefiniteError);
    CHECK_THROWS_AS(build_quadratic_game(-Matrix::Identity(2, 2), vec2(2.0, 0.5), unit_box2()),
                    PointOutsideSetError);
}

TEST_CASE("utility values by hand") {
    const auto game = build_quadratic_game(-Matrix::Identity(2, 2), vec2(0.3, 0.4), unit_box2());
    CHECK(game.utility(0, vec2(0.0, 0.0)) == doctest::Approx(0.0));
    CHECK(game.utility(0, vec2(1.0, 0.0)) == doctest::Approx(-0.2));   // -0.5 + 0.3
    CHECK(game.utility(1, vec2(0.0, 1.0)) == doctest::Approx(-0.1));   // -0.5 + 0.4
    CHECK_THROWS_AS(game.utility(2, vec2(0.0, 0.0)), InvalidArgument);
}

TEST_CASE("pseudo-gradient") {
    const auto game = build_quadratic_game(-Matrix::Identity(2, 2), vec2(0.3, 0.4), unit_box2());
    CHECK((game.pseudo_gradient(vec2(0.0, 0.0)) - vec2(0.3, 0.4)).norm() < 1e-15);
    CHECK(game.pseudo_gradient(game.nash_point()).norm() == doctest::Approx(0.0));

    const auto coupled =
        build_quadratic_game(mat2(-2, 1, 1, -2), vec2(0.0, 0.0), sym_box(2, 1.5));
    CHECK((coupled.pseudo_gradient(vec2(1.0, 0.0)) - vec2(-2.0, 1.0)).norm() < 1e-15);
}

TEST_CASE("jacobian is the curvature matrix and matches finite differences") {
    Rng rng = make_rng(21);
    std::uniform_real_distribution<double> unif(-0.4, 0.4);
    const auto game = build_quadratic_game(mat2(-2, 1, 1, -2), vec2(0.1, -0.2), sym_box(2, 1.0));
    CHECK((game.jacobian_pseudo_gradient(vec2(5.0, 5.0)) - game.curvature()).norm() == 0.0);

    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        const Vector x = vec2(unif(rng), unif(rng));
        const Matrix J = game.jacobian_pseudo_gradient(x);
        for (int j = 0; j < 2; ++j) {
            Vector xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const Vector col = (game.pseudo_gradient(xp) - game.pseudo_gradient(xm)) / (2 * h);
            for (int i = 0; i < 2; ++i) CHECK(std::abs(col[i] - J(i, j)) < 1e-6);
        }
    }
}

TEST_CASE("equilibrium verification") {
    const auto game = build_quadratic_game(-Matrix::Identity(2, 2), vec2(0.3, 0.4), unit_box2());
    CHECK(verify_ne(game, vec2(0.3, 0.4), 1e-8));
    CHECK_FALSE(verify_ne(game, vec2(0.0, 0.0), 1e-8));
    CHECK_THROWS_AS(verify_ne(game, vec2(0.3, 0.4), 0.0), InvalidArgument);
}

TEST_CASE("constructed equilibria verify across random instances") {
    Rng rng = make_rng(2024);
    for (int n : {2, 3, 5}) {
        const auto S = sym_box(n, 1.0);
        std::uniform_real_distribution<double> unif(-0.8, 0.8);
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix A = random_neg_def(n, rng);
            Vector x_star(n);
            for (int i = 0; i < n; ++i) x_star[i] = unif(rng);
            const auto game = build_quadratic_game(A, x_star, S);
            CHECK(game.pseudo_gradient(x_star).norm() < 1e-10);
            CHECK(verify_ne(game, x_star, 1e-8));
            // Row-wise best response at the equilibrium returns the
            // equilibrium coordinate.
            for (int i = 0; i < n; ++i) {
                double cross = -A.row(i).dot(x_star);
                for (int j = 0; j < n; ++j)
                    if (j != i) cross += A(i, j) * x_star[j];
                CHECK(std::abs(-cross / A(i, i) - x_star[i]) < 1e-10);
            }
        }
    }
}

TEST_CASE("gamma is the spectral norm") {
    CHECK(build_quadratic_game(-Matrix::Identity(2, 2), vec2(0.5, 0.5), unit_box2()).gamma() ==
          doctest::Approx(1.0));
    CHECK(gamma_of(build_quadratic_game(-2.0 * Matrix::Identity(3, 3), Vector::Zero(3),
                                        sym_box(3, 1.0))) == doctest::Approx(2.0));
    CHECK(gamma_of(build_quadratic_game(mat2(-2, 1, 1, -2), Vector::Zero(2), sym_box(2, 1.0))) ==
          doctest::Approx(3.0));
}

TEST_CASE("four-point ensemble geometry") {
    const auto S = unit_box2();
    const auto ens = theorem2_ensemble(S, 0.1, 1.0);
    REQUIRE(ens.size() == 4);
    CHECK(ens.gamma == doctest::Approx(1.0));

    const double r = std::numbers::sqrt2 * 0.1;
    double max_dist = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        CHECK((ens.packing.points[a] - vec2(0.5, 0.5)).norm() == doctest::Approx(r));
        CHECK(verify_ne(ens.games[a], ens.packing.points[a], 1e-8));
        for (std::size_t b = a + 1; b < 4; ++b) {
            const double d = (ens.packing.points[a] - ens.packing.points[b]).norm();
            max_dist = std::max(max_dist, d);
            const bool adjacent = std::abs(d - 2.0 * 0.1) < 1e-12;
            const bool opposite = std::abs(d - 2.0 * r) < 1e-12;
            CHECK((adjacent || opposite));
        }
    }
    CHECK(max_dist == doctest::Approx(2.0 * std::numbers::sqrt2 * 0.1).epsilon(1e-12));
    CHECK(ens.packing.valid(S));
}

TEST_CASE("four-point ensemble rejects oversized radii and bad curvature specs") {
    CHECK_THROWS_AS(theorem2_ensemble(unit_box2(), 0.9, 1.0), BallDoesNotFitError);
    // Spectral norm 2 but gamma 1 requested.
    CHECK_THROWS_AS(theorem2_ensemble(unit_box2(), 0.1, 1.0, -2.0 * Matrix::Identity(2, 2)),
                    BadASpecError);
    CHECK_NOTHROW(theorem2_ensemble(unit_box2(), 0.1, 2.0, -2.0 * Matrix::Identity(2, 2)));
    // A one-dimensional space has no 2-plane.
    CHECK_THROWS_AS(
        theorem2_ensemble(geometry::ConstraintSet::box(Vector::Zero(1), Vector::Ones(1)), 0.1,
                          1.0),
        BallDoesNotFitError);
}

TEST_CASE("packing-driven ensemble") {
    const auto S = unit_box2();
    const auto ens = theorem1_ensemble(S, 0.05);
    CHECK(ens.size() >= 80);
    for (std::size_t m = 0; m < ens.size(); m += 17)
        CHECK(verify_ne(ens.games[m], ens.packing.points[m], 1e-8));

    geometry::PackingResult single;
    single.epsilon = 0.05;
    single.points = {vec2(0.25, 0.5)};
    const auto one = ensemble_from_packing(S, single, -Matrix::Identity(2, 2));
    CHECK(one.size() == 1);

    // Boundary equilibria are rejected: the family needs interior points.
    geometry::PackingResult edge;
    edge.epsilon = 0.05;
    edge.points = {vec2(0.0, 0.5)};
    CHECK_THROWS_AS(ensemble_from_packing(S, edge, -Matrix::Identity(2, 2)),
                    PointOutsideSetError);
}

TEST_CASE("game JSON round trip") {
    const auto game = build_quadratic_game(mat2(-2, 1, 1, -2), vec2(0.1, -0.1), sym_box(2, 1.0));
    const auto back = QuadraticGame::from_json(game.to_json());
    CHECK((back.curvature() - game.curvature()).norm() == 0.0);
    CHECK((back.nash_point() - game.nash_point()).norm() == 0.0);
}
