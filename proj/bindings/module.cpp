#include "nashbound/bounds.hpp"
#include "nashbound/divergence.hpp"
#include "nashbound/experiments.hpp"
#include "nashbound/games.hpp"
#include "nashbound/geometry.hpp"
#include "nashbound/noise.hpp"
#include "nashbound/protocol.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace nashbound;

namespace {

geometry::ConstraintSet make_box(const Vector& lower, const Vector& upper) {
    return geometry::ConstraintSet::box(lower, upper);
}
geometry::ConstraintSet make_ball(const Vector& center, double radius) {
    return geometry::ConstraintSet::ball(center, radius);
}

py::dict mi_to_dict(const divergence::MiEstimate& est) {
    py::dict d;
    d["value"] = est.value;
    d["stderr"] = est.std_error;
    d["samples"] = est.samples;
    d["units"] = "nats";
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Distributed Nash-seeking testbed: hard game instances, noisy-channel "
              "simulation, information-theoretic iteration bounds";

    py::register_exception<QuadratureFailure>(m, "QuadratureFailure");
    py::register_exception<RegularityViolatedError>(m, "RegularityViolated");

    // geometry
    py::class_<geometry::ConstraintSet>(m, "ConstraintSet")
        .def_static("box", &make_box, py::arg("lower"), py::arg("upper"))
        .def_static("ball", &make_ball, py::arg("center"), py::arg("radius"))
        .def("dimension", &geometry::ConstraintSet::dimension)
        .def("contains", &geometry::ConstraintSet::contains, py::arg("x"),
             py::arg("tol") = 1e-12)
        .def("project", &geometry::ConstraintSet::project)
        .def("volume", &geometry::ConstraintSet::volume)
        .def("surface_area", &geometry::ConstraintSet::surface_area)
        .def("centroid", &geometry::ConstraintSet::centroid)
        .def("to_json", [](const geometry::ConstraintSet& s) { return s.to_json().dump(); })
        .def_static("from_json", [](const std::string& text) {
            return geometry::ConstraintSet::from_json(nlohmann::json::parse(text));
        });

    py::class_<geometry::PackingResult>(m, "PackingResult")
        .def_readonly("points", &geometry::PackingResult::points)
        .def_readonly("epsilon", &geometry::PackingResult::epsilon)
        .def("count", &geometry::PackingResult::count)
        .def("min_pairwise_distance", &geometry::PackingResult::min_pairwise_distance)
        .def("valid", &geometry::PackingResult::valid);

    m.def("greedy_packing", &geometry::greedy_packing, py::arg("set"), py::arg("epsilon"),
          py::arg("seed"), py::arg("restarts"), py::arg("pool_size") = 8192);
    m.def("lattice_count",
          [](const geometry::ConstraintSet& s, double eps) { return geometry::lattice_count(s, eps); });
    m.def("lattice_lower_bound", &geometry::lattice_lower_bound);
    m.def("kolmogorov_capacity_estimate", &geometry::kolmogorov_capacity_estimate);
    m.def("isoperimetric_ratio", &geometry::isoperimetric_ratio);
    m.def("isoperimetric_check", &geometry::isoperimetric_check);

    // games
    py::class_<games::QuadraticGame>(m, "QuadraticGame")
        .def(py::init<Matrix, Vector, geometry::ConstraintSet>(), py::arg("A"),
             py::arg("x_star"), py::arg("constraint_set"))
        .def("players", &games::QuadraticGame::players)
        .def("utility", &games::QuadraticGame::utility, py::arg("player"), py::arg("x"))
        .def("pseudo_gradient", &games::QuadraticGame::pseudo_gradient)
        .def("jacobian_pseudo_gradient", &games::QuadraticGame::jacobian_pseudo_gradient)
        .def("gamma", &games::QuadraticGame::gamma)
        .def_property_readonly("x_star", &games::QuadraticGame::nash_point)
        .def("to_json", [](const games::QuadraticGame& g) { return g.to_json().dump(); });

    m.def("verify_ne", &games::verify_ne, py::arg("game"), py::arg("x"), py::arg("tol"));

    py::class_<games::HardEnsemble>(m, "HardEnsemble")
        .def_readonly("games", &games::HardEnsemble::games)
        .def_readonly("packing", &games::HardEnsemble::packing)
        .def_readonly("gamma", &games::HardEnsemble::gamma)
        .def("size", &games::HardEnsemble::size);

    m.def("theorem2_ensemble", &games::theorem2_ensemble, py::arg("set"), py::arg("epsilon"),
          py::arg("gamma"), py::arg("A") = std::nullopt);
    m.def("theorem1_ensemble", &games::theorem1_ensemble, py::arg("set"), py::arg("epsilon"),
          py::arg("A") = std::nullopt, py::arg("seed") = 0, py::arg("restarts") = 8);

    // noise
    py::class_<noise::NoiseModel>(m, "NoiseModel")
        .def_static("gaussian", &noise::NoiseModel::gaussian, py::arg("variance"))
        .def_static("logistic", &noise::NoiseModel::logistic, py::arg("scale"))
        .def_static("tabulated", &noise::NoiseModel::tabulated, py::arg("grid"),
                    py::arg("values"))
        .def("variance", &noise::NoiseModel::variance)
        .def("pdf", &noise::NoiseModel::pdf)
        .def("log_pdf", &noise::NoiseModel::log_pdf)
        .def("entropy", &noise::NoiseModel::entropy);

    m.def("fisher_information",
          [](const noise::NoiseModel& model) { return noise::fisher_information(model); });
    m.def("check_regularity",
          [](const noise::NoiseModel& model, const std::vector<double>& probes) {
              const auto rep = noise::check_regularity(model, probes);
              py::dict d;
              d["passed"] = rep.passed;
              d["max_abs_third_derivative"] = rep.max_abs_third_derivative;
              d["worst_margin"] = rep.worst_margin;
              d["tail_statistic"] = rep.tail_statistic;
              d["message"] = rep.message;
              return d;
          },
          py::arg("model"), py::arg("probes"));
    m.def("downlink_capacity", &noise::downlink_capacity, py::arg("variances"),
          py::arg("alpha"));

    py::class_<noise::Topology>(m, "Topology")
        .def_static("shared", &noise::Topology::shared, py::arg("players"),
                    py::arg("constraints"))
        .def_static("split_usn", &noise::Topology::split_usn, py::arg("players"),
                    py::arg("constraints"))
        .def_readonly("players", &noise::Topology::players);
    m.def("default_topology", &noise::default_topology, py::arg("set"),
          py::arg("shared_usn") = true);

    py::class_<noise::ChannelConfig>(m, "ChannelConfig")
        .def_static("gaussian", &noise::ChannelConfig::gaussian, py::arg("topology"),
                    py::arg("usn_var"), py::arg("csn_var"), py::arg("downlink_var"),
                    py::arg("alpha"))
        .def_readwrite("alpha", &noise::ChannelConfig::alpha);

    m.def("covariance_sigma_AG", &noise::covariance_sigma_AG, py::arg("A"), py::arg("topology"),
          py::arg("channels"));
    m.def("min_variance_bound", &noise::min_variance_bound, py::arg("A"), py::arg("topology"),
          py::arg("channels"));

    // divergence
    m.def("kl_numeric",
          [](const noise::NoiseModel& p, double shift) { return divergence::kl_numeric(p, shift); },
          py::arg("model"), py::arg("shift"));
    m.def("kl_gaussian_shift", &divergence::kl_gaussian_shift, py::arg("delta"),
          py::arg("Sigma"));
    m.def("kl_expansion_check",
          [](const noise::NoiseModel& p, std::vector<double> shifts) {
              return divergence::kl_expansion_check(p, std::move(shifts)).to_json().dump();
          },
          py::arg("model"), py::arg("shifts"));
    m.def("mi_mixture_gaussian",
          [](const std::vector<Vector>& means, const Matrix& sigma, long samples,
             std::uint64_t seed) {
              Rng rng = make_rng(seed);
              return mi_to_dict(divergence::mi_mixture_estimate(means, sigma, samples, rng));
          },
          py::arg("means"), py::arg("Sigma"), py::arg("samples"), py::arg("seed"));

    // bounds
    const auto report_to_dict = [](const bounds::BoundReport& r) {
        py::dict d;
        d["theorem"] = bounds::theorem_name(r.theorem);
        d["value"] = r.value;
        d["caveats"] = r.caveats;
        return d;
    };
    m.def("theorem1_bound",
          [report_to_dict](double logM, double c, double d) {
              return report_to_dict(bounds::theorem1_bound(logM, c, d));
          },
          py::arg("logM"), py::arg("C_down"), py::arg("delta"));
    m.def("corollary1_bound",
          [report_to_dict](const geometry::ConstraintSet& S, double e, double d, double c) {
              return report_to_dict(bounds::corollary1_bound(S, e, d, c));
          },
          py::arg("set"), py::arg("epsilon"), py::arg("delta"), py::arg("C_down"));
    m.def("theorem2_bound",
          [report_to_dict](double s2, double g, double e, double d) {
              return report_to_dict(bounds::theorem2_bound(s2, g, e, d));
          },
          py::arg("min_sigma2"), py::arg("gamma"), py::arg("epsilon"), py::arg("delta"));
    m.def("theorem3_bound",
          [report_to_dict](int n, double g, double e, double d, double fi) {
              return report_to_dict(bounds::theorem3_bound(n, g, e, d, fi));
          },
          py::arg("players"), py::arg("gamma"), py::arg("epsilon"), py::arg("delta"),
          py::arg("max_fisher"));
    m.def("theorem4_bound",
          [report_to_dict](const geometry::ConstraintSet& S, double eps, double gamma,
                           const noise::Topology& topo, const noise::ChannelConfig& cfg,
                           double delta, long mc_samples, std::uint64_t seed) {
              Rng rng = make_rng(seed);
              const auto cands = bounds::default_candidates(S, eps, gamma, rng);
              return report_to_dict(
                  bounds::theorem4_bound(cands, topo, cfg, delta, mc_samples, rng));
          },
          py::arg("set"), py::arg("epsilon"), py::arg("gamma"), py::arg("topology"),
          py::arg("channels"), py::arg("delta"), py::arg("mc_samples"), py::arg("seed"));

    // protocol
    py::class_<protocol::AlgorithmSpec>(m, "AlgorithmSpec")
        .def_readwrite("id", &protocol::AlgorithmSpec::id)
        .def_readwrite("c", &protocol::AlgorithmSpec::step_constant)
        .def_readwrite("exponent", &protocol::AlgorithmSpec::step_exponent)
        .def_readwrite("projection", &protocol::AlgorithmSpec::projection);
    m.def("baseline_noisy_gradient", &protocol::baseline_noisy_gradient, py::arg("c"),
          py::arg("exponent"));

    py::class_<protocol::Trace>(m, "Trace")
        .def_readonly("X", &protocol::Trace::X)
        .def_readonly("Y_hat", &protocol::Trace::Y_hat)
        .def_readonly("Z_hat", &protocol::Trace::Z_hat)
        .def_readonly("output", &protocol::Trace::output)
        .def_readonly("seed", &protocol::Trace::seed)
        .def("to_csv", &protocol::Trace::to_csv);
    m.def("run", &protocol::run, py::arg("game"), py::arg("topology"), py::arg("channels"),
          py::arg("algorithm"), py::arg("T"), py::arg("seed"));
    m.def("empirical_power", &protocol::empirical_power);

    // experiments
    m.def("genie_decode", &experiments::genie_decode, py::arg("ensemble"), py::arg("output"));
    m.def("run_genie_test",
          [](const games::HardEnsemble& e, const noise::Topology& t,
             const noise::ChannelConfig& c, const protocol::AlgorithmSpec& a, int T, long trials,
             std::uint64_t seed, int workers) {
              return experiments::run_genie_test(e, t, c, a, T, trials, seed, workers)
                  .to_json()
                  .dump();
          },
          py::arg("ensemble"), py::arg("topology"), py::arg("channels"), py::arg("algorithm"),
          py::arg("T"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1);
    m.def("fano_check",
          [](const std::vector<std::vector<long>>& confusion) {
              return experiments::fano_check(confusion).to_json().dump();
          },
          py::arg("confusion"));
    m.def("empirical_complexity",
          [](const games::HardEnsemble& e, const noise::Topology& t,
             const noise::ChannelConfig& c, const protocol::AlgorithmSpec& a, double eps,
             double delta, int T_max, long trials, std::uint64_t seed, int workers) {
              return experiments::empirical_complexity(e, t, c, a, eps, delta, T_max, trials,
                                                       seed, workers)
                  .to_json()
                  .dump();
          },
          py::arg("ensemble"), py::arg("topology"), py::arg("channels"), py::arg("algorithm"),
          py::arg("epsilon"), py::arg("delta"), py::arg("T_max"), py::arg("trials"),
          py::arg("seed"), py::arg("workers") = 1);

    m.attr("__version__") = "0.1.0";
}
