#pragma once

#include "nashbound/common.hpp"
#include "nashbound/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace nashbound::games {

// N-player game with utilities
//   u_i(x) = a_ii/2 * x_i^2 + x_i * (-A_i . x_star + sum_{j != i} a_ij x_j),
// A symmetric negative definite. The unconstrained Nash equilibrium is
// exactly x_star; pseudo-gradient A(x - x_star).
class QuadraticGame {
  public:
    QuadraticGame(Matrix A, Vector x_star, geometry::ConstraintSet S);

    int players() const { return static_cast<int>(x_star_.size()); }
    const Matrix& curvature() const { return A_; }
    const Vector& nash_point() const { return x_star_; }
    const geometry::ConstraintSet& action_space() const { return S_; }

    double utility(int player, const Vector& x) const;
    Vector pseudo_gradient(const Vector& x) const;
    Matrix jacobian_pseudo_gradient(const Vector& x) const;

    // Spectral norm of the pseudo-gradient Jacobian.
    double gamma() const { return gamma_; }

    nlohmann::json to_json() const;
    static QuadraticGame from_json(const nlohmann::json& j);

  private:
    Matrix A_;
    Vector x_star_;
    geometry::ConstraintSet S_;
    double gamma_ = 0.0;
};

QuadraticGame build_quadratic_game(Matrix A, Vector x_star, geometry::ConstraintSet S);

// True iff every player's best response to x^{-i} is within tol of x^i.
bool verify_ne(const QuadraticGame& game, const Vector& x, double tol);

double gamma_of(const QuadraticGame& game);

// Games sharing one curvature matrix, one per packing point.
struct HardEnsemble {
    std::vector<QuadraticGame> games;
    geometry::PackingResult packing;
    Matrix A;
    double gamma = 0.0;

    std::size_t size() const { return games.size(); }
};

HardEnsemble ensemble_from_packing(const geometry::ConstraintSet& S,
                                   geometry::PackingResult packing, Matrix A);

// Four equilibria 90 degrees apart on the circle of radius sqrt(2)*eps in the
// first two coordinates, centered at the centroid of S. Pairwise distances are
// 2*eps (adjacent) and 2*sqrt(2)*eps (opposite). Default A = -gamma*I.
HardEnsemble theorem2_ensemble(const geometry::ConstraintSet& S, double epsilon, double gamma,
                               const std::optional<Matrix>& A_spec = std::nullopt);

// One game per greedy-packing point. Default A = -I.
HardEnsemble theorem1_ensemble(const geometry::ConstraintSet& S, double epsilon,
                               const std::optional<Matrix>& A_spec = std::nullopt,
                               std::uint64_t seed = 0, int restarts = 8);

}  // namespace nashbound::games
