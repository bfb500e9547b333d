#include "nashbound/games.hpp"

#include <cmath>
#include <numbers>

namespace nashbound::games {

namespace {

void check_symmetric_negative_definite(const Matrix& A) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw InvalidArgument("curvature matrix must be square and nonempty");
    if (A != A.transpose()) throw NotNegativeDefiniteError("curvature matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().maxCoeff() >= -1e-12)
        throw NotNegativeDefiniteError("curvature matrix is not negative definite");
}

double spectral_norm_symmetric(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

QuadraticGame::QuadraticGame(Matrix A, Vector x_star, geometry::ConstraintSet S)
    : A_(std::move(A)), x_star_(std::move(x_star)), S_(std::move(S)) {
    check_symmetric_negative_definite(A_);
    if (A_.rows() != x_star_.size() || S_.dimension() != x_star_.size())
        throw InvalidArgument("QuadraticGame: inconsistent dimensions");
    if (!S_.contains(x_star_))
        throw PointOutsideSetError("QuadraticGame: equilibrium point outside the action space");
    gamma_ = spectral_norm_symmetric(A_);
}

QuadraticGame build_quadratic_game(Matrix A, Vector x_star, geometry::ConstraintSet S) {
    return QuadraticGame(std::move(A), std::move(x_star), std::move(S));
}

double QuadraticGame::utility(int player, const Vector& x) const {
    const int n = players();
    if (player < 0 || player >= n) throw InvalidArgument("utility: player index out of range");
    if (x.size() != n) throw InvalidArgument("utility: action vector has wrong length");
    double cross = -A_.row(player).dot(x_star_);
    for (int j = 0; j < n; ++j)
        if (j != player) cross += A_(player, j) * x[j];
    return 0.5 * A_(player, player) * x[player] * x[player] + x[player] * cross;
}

Vector QuadraticGame::pseudo_gradient(const Vector& x) const {
    if (x.size() != players()) throw InvalidArgument("pseudo_gradient: wrong action length");
    return A_ * (x - x_star_);
}

Matrix QuadraticGame::jacobian_pseudo_gradient(const Vector&) const { return A_; }

nlohmann::json QuadraticGame::to_json() const {
    nlohmann::json j;
    std::vector<double> a;
    a.reserve(static_cast<std::size_t>(A_.size()));
    for (int r = 0; r < A_.rows(); ++r)
        for (int c = 0; c < A_.cols(); ++c) a.push_back(A_(r, c));
    j["A"] = a;
    j["x_star"] = std::vector<double>(x_star_.begin(), x_star_.end());
    j["constraint_set"] = S_.to_json();
    return j;
}

QuadraticGame QuadraticGame::from_json(const nlohmann::json& j) {
    const auto xs = j.at("x_star").get<std::vector<double>>();
    const int n = static_cast<int>(xs.size());
    const auto a = j.at("A").get<std::vector<double>>();
    if (a.size() != static_cast<std::size_t>(n) * n)
        throw InvalidArgument("QuadraticGame::from_json: A has wrong length");
    Matrix A(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) A(r, c) = a[static_cast<std::size_t>(r) * n + c];
    return QuadraticGame(A, Eigen::Map<const Vector>(xs.data(), n),
                         geometry::ConstraintSet::from_json(j.at("constraint_set")));
}

bool verify_ne(const QuadraticGame& game, const Vector& x, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("verify_ne: requires tol > 0");
    const int n = game.players();
    if (x.size() != n) throw InvalidArgument("verify_ne: wrong action length");
    const Matrix& A = game.curvature();
    const auto& S = game.action_space();
    for (int i = 0; i < n; ++i) {
        // Unconstrained argmax of the concave quadratic in x_i.
        double cross = -A.row(i).dot(game.nash_point());
        for (int j = 0; j < n; ++j)
            if (j != i) cross += A(i, j) * x[j];
        double best = -cross / A(i, i);
        if (S.kind() == geometry::SetKind::box)
            best = std::clamp(best, S.lower()[i], S.upper()[i]);
        if (std::abs(best - x[i]) > tol) return false;
    }
    return true;
}

double gamma_of(const QuadraticGame& game) { return game.gamma(); }

HardEnsemble ensemble_from_packing(const geometry::ConstraintSet& S,
                                   geometry::PackingResult packing, Matrix A) {
    check_symmetric_negative_definite(A);
    HardEnsemble e;
    e.A = A;
    e.gamma = spectral_norm_symmetric(A);
    for (const Vector& p : packing.points) {
        // Strict interiority keeps the unconstrained equilibrium equal to the
        // constrained one for every game in the family.
        if (S.interior_margin(p) < 1e-9)
            throw PointOutsideSetError(
                "ensemble_from_packing: equilibrium must be strictly interior");
        e.games.emplace_back(A, p, S);
    }
    e.packing = std::move(packing);
    return e;
}

HardEnsemble theorem2_ensemble(const geometry::ConstraintSet& S, double epsilon, double gamma,
                               const std::optional<Matrix>& A_spec) {
    if (!(epsilon > 0.0)) throw InvalidArgument("theorem2_ensemble: requires epsilon > 0");
    if (!(gamma > 0.0)) throw InvalidArgument("theorem2_ensemble: requires gamma > 0");
    const int n = S.dimension();
    if (n < 2) throw BallDoesNotFitError("theorem2_ensemble: needs dimension >= 2");

    const double r = std::numbers::sqrt2 * epsilon;
    const Vector c = S.centroid();
    // The disk of radius r in the first two coordinates about the centroid
    // must fit strictly inside S.
    if (S.kind() == geometry::SetKind::box) {
        for (int i = 0; i < 2; ++i) {
            const double half = 0.5 * (S.upper()[i] - S.lower()[i]);
            if (half - r < 1e-9)
                throw BallDoesNotFitError(
                    "theorem2_ensemble: no room for a 2-ball of radius sqrt(2)*epsilon");
        }
    } else if (S.radius() - r < 1e-9) {
        throw BallDoesNotFitError(
            "theorem2_ensemble: no room for a 2-ball of radius sqrt(2)*epsilon");
    }

    Matrix A;
    if (A_spec) {
        A = *A_spec;
        check_symmetric_negative_definite(A);
        if (A.rows() != n) throw BadASpecError("theorem2_ensemble: A has wrong dimension");
        if (std::abs(spectral_norm_symmetric(A) - gamma) > 1e-9)
            throw BadASpecError("theorem2_ensemble: spectral norm of A must equal gamma");
    } else {
        A = -gamma * Matrix::Identity(n, n);
    }

    geometry::PackingResult packing;
    packing.epsilon = epsilon;
    packing.method = geometry::PackingMethod::greedy;
    for (int m = 0; m < 4; ++m) {
        Vector p = c;
        const double angle = 0.5 * std::numbers::pi * m;
        p[0] += r * std::cos(angle);
        p[1] += r * std::sin(angle);
        packing.points.push_back(std::move(p));
    }
    return ensemble_from_packing(S, std::move(packing), std::move(A));
}

HardEnsemble theorem1_ensemble(const geometry::ConstraintSet& S, double epsilon,
                               const std::optional<Matrix>& A_spec, std::uint64_t seed,
                               int restarts) {
    geometry::PackingResult packing = geometry::greedy_packing(S, epsilon, seed, restarts);
    Matrix A = A_spec ? *A_spec : Matrix(-Matrix::Identity(S.dimension(), S.dimension()));
    return ensemble_from_packing(S, std::move(packing), std::move(A));
}

}  // namespace nashbound::games
