#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levyexp/io.hpp"
#include "levyexp/problem.hpp"

namespace py = pybind11;
using namespace levyexp;

namespace {

std::vector<Vector> to_vectors(const std::vector<Matrix>& columns) {
    std::vector<Vector> out;
    out.reserve(columns.size());
    for (const auto& column : columns) {
        out.emplace_back(column);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Small-noise expansion of jump-driven dissipative evolution "
        "equations: operators, compound Poisson sampling, exponential-Euler "
        "solvers, the correction hierarchy, and the order-in-epsilon "
        "measurement.";
    m.attr("__version__") = "0.1.0";

    py::class_<SpatialGrid>(m, "SpatialGrid")
        .def(py::init<int>(), py::arg("n_nodes"))
        .def_readonly("n_nodes", &SpatialGrid::n_nodes)
        .def_property_readonly("spacing", &SpatialGrid::spacing)
        .def("nodes", &SpatialGrid::nodes);

    py::class_<SpaceLayout, std::shared_ptr<SpaceLayout>>(m, "SpaceLayout")
        .def(py::init<int, const SpatialGrid&, std::vector<double>>(),
             py::arg("components"), py::arg("grid"),
             py::arg("component_weights"))
        .def(py::init<int, int, Vector, std::vector<double>>(),
             py::arg("components"), py::arg("n_nodes"),
             py::arg("node_weights"), py::arg("component_weights"))
        .def_property_readonly("components", &SpaceLayout::components)
        .def_property_readonly("n_nodes", &SpaceLayout::n_nodes)
        .def_property_readonly("dim", &SpaceLayout::dim)
        .def("inner", &SpaceLayout::inner)
        .def("norm", &SpaceLayout::norm)
        .def("operator_norm", &SpaceLayout::operator_norm)
        .def_property_readonly("metric_diagonal",
                               &SpaceLayout::metric_diagonal);

    py::class_<Field>(m, "Field")
        .def(py::init([](std::shared_ptr<SpaceLayout> layout, Vector values) {
                 return Field(LayoutPtr(std::move(layout)),
                              std::move(values));
             }),
             py::arg("layout"), py::arg("values"))
        .def_readonly("values", &Field::values)
        .def("norm", &Field::norm);

    m.def("assemble_diffusion_operator", &assemble_diffusion_operator,
          py::arg("grid"), py::arg("c"));
    m.def("assemble_fhn_operator", &assemble_fhn_operator, py::arg("grid"),
          py::arg("c"), py::arg("p"), py::arg("gamma"), py::arg("alpha"));
    m.def("dissipativity_rate", &dissipativity_rate, py::arg("layout"),
          py::arg("a"));

    py::class_<OperatorBundle, std::shared_ptr<OperatorBundle>>(
        m, "OperatorBundle")
        .def(py::init([](std::shared_ptr<SpaceLayout> layout, Matrix a,
                         double dt) {
                 return OperatorBundle(LayoutPtr(std::move(layout)),
                                       std::move(a), dt);
             }),
             py::arg("layout"), py::arg("a"), py::arg("dt"))
        .def_property_readonly("dt", &OperatorBundle::dt)
        .def_property_readonly("omega", &OperatorBundle::omega)
        .def_property_readonly("strictly_dissipative",
                               &OperatorBundle::strictly_dissipative)
        .def_property_readonly(
            "step", [](const OperatorBundle& b) { return b.step(); })
        .def_property_readonly(
            "step_integral",
            [](const OperatorBundle& b) { return b.step_integral(); })
        .def_property_readonly(
            "generator",
            [](const OperatorBundle& b) { return b.generator(); });

    m.def("apply_semigroup", &apply_semigroup, py::arg("bundle"),
          py::arg("x"), py::arg("steps"));

    py::class_<PolynomialMap>(m, "PolynomialMap")
        .def(py::init<std::vector<Vector>>(), py::arg("per_component"))
        .def_static("fhn_cubic", &PolynomialMap::fhn_cubic, py::arg("xi"),
                    py::arg("components"))
        .def_static("zero", &PolynomialMap::zero, py::arg("components"))
        .def_property_readonly("eta", &PolynomialMap::eta)
        .def_property_readonly("max_degree", &PolynomialMap::max_degree)
        .def("eval", &PolynomialMap::eval)
        .def("frechet",
             [](const PolynomialMap& f, int order, const Vector& w,
                const std::vector<Matrix>& increments) {
                 const auto hs = to_vectors(increments);
                 return f.frechet(order, w, hs);
             })
        .def("taylor_eval", &PolynomialMap::taylor_eval, py::arg("w"),
             py::arg("h"), py::arg("order"));

    py::class_<MarkLaw>(m, "MarkLaw")
        .def_static("two_point", &MarkLaw::two_point, py::arg("a"))
        .def_static("uniform", &MarkLaw::uniform, py::arg("a"))
        .def_static("double_exponential", &MarkLaw::double_exponential,
                    py::arg("b"))
        .def("abs_moment", &MarkLaw::abs_moment, py::arg("m"));

    py::class_<MarkEmbedding>(m, "MarkEmbedding")
        .def_static("fixed_profile", &MarkEmbedding::fixed_profile,
                    py::arg("direction"))
        .def("weighted_norm_moment", &MarkEmbedding::weighted_norm_moment);

    py::class_<JumpMeasureSpec>(m, "JumpMeasureSpec")
        .def(py::init<double, MarkLaw, MarkEmbedding>(),
             py::arg("intensity"), py::arg("law"), py::arg("embedding"))
        .def_readonly("intensity", &JumpMeasureSpec::intensity);

    py::class_<NoiseCovariance>(m, "NoiseCovariance")
        .def(py::init<Vector>(), py::arg("diagonal"))
        .def_static("uniform_trace", &NoiseCovariance::uniform_trace,
                    py::arg("layout"), py::arg("trace"))
        .def_property_readonly("trace", &NoiseCovariance::trace)
        .def_property_readonly("diagonal", &NoiseCovariance::diagonal)
        .def("apply_sqrt", &NoiseCovariance::apply_sqrt);

    py::class_<LevyPath>(m, "LevyPath")
        .def_readonly("horizon", &LevyPath::horizon)
        .def_readonly("jump_times", &LevyPath::jump_times)
        .def_readonly("marks", &LevyPath::marks)
        .def("value_at", &LevyPath::value_at)
        .def("value_before", &LevyPath::value_before);

    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &SplitMix64::next)
        .def("uniform01", &SplitMix64::uniform01)
        .def("poisson", &SplitMix64::poisson);

    m.def("derive_stream_seed", &derive_stream_seed, py::arg("master_seed"),
          py::arg("path_index"), py::arg("epsilon_index") = 0);
    m.def(
        "sample_path",
        [](const JumpMeasureSpec& spec, double horizon, std::uint64_t seed) {
            SplitMix64 rng(seed);
            return sample_path(spec, horizon, rng);
        },
        py::arg("spec"), py::arg("horizon"), py::arg("seed"));
    m.def("jump_measure_moment", &jump_measure_moment, py::arg("spec"),
          py::arg("m"));
    m.def("bin_increments", &bin_increments, py::arg("path"), py::arg("dt"));

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("dt", &Trajectory::dt)
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_property_readonly("steps", &Trajectory::steps);

    m.def("solve_deterministic", &solve_deterministic, py::arg("bundle"),
          py::arg("f"), py::arg("u0"), py::arg("horizon"));
    m.def("stochastic_convolution", &stochastic_convolution,
          py::arg("bundle"), py::arg("q"), py::arg("path"));
    m.def("solve_sde", &solve_sde, py::arg("bundle"), py::arg("f"),
          py::arg("q"), py::arg("epsilon"), py::arg("u0"), py::arg("path"));

    py::class_<CompositionEntry>(m, "CompositionEntry")
        .def_readonly("slots", &CompositionEntry::slots)
        .def_readonly("parts", &CompositionEntry::parts)
        .def_readonly("coefficient", &CompositionEntry::coefficient);
    py::class_<CompositionTable>(m, "CompositionTable")
        .def_readonly("order", &CompositionTable::order)
        .def_readonly("entries", &CompositionTable::entries);
    m.def("enumerate_compositions", &enumerate_compositions, py::arg("k"));
    m.def(
        "taylor_forcing",
        [](const PolynomialMap& f, const CompositionTable& table,
           const Vector& base, const std::vector<Matrix>& corrections) {
            const auto states = to_vectors(corrections);
            return taylor_forcing(f, table, base, states);
        },
        py::arg("f"), py::arg("table"), py::arg("base"),
        py::arg("corrections"));

    py::class_<ExpansionSet>(m, "ExpansionSet")
        .def_readonly("order", &ExpansionSet::order)
        .def_readonly("phi", &ExpansionSet::phi)
        .def_readonly("corrections", &ExpansionSet::corrections)
        .def("correction", &ExpansionSet::correction, py::arg("k"),
             py::return_value_policy::reference_internal);
    m.def("solve_first_correction", &solve_first_correction,
          py::arg("bundle"), py::arg("f"), py::arg("q"), py::arg("phi"),
          py::arg("path"));
    m.def("expand", &expand, py::arg("bundle"), py::arg("f"), py::arg("q"),
          py::arg("u0"), py::arg("path"), py::arg("order"));

    m.def("remainder", &levyexp::remainder, py::arg("u_eps"), py::arg("set"),
          py::arg("epsilon"));
    m.def("sup_weighted_norm", &sup_weighted_norm, py::arg("layout"),
          py::arg("trajectory"));
    m.def(
        "sup_moment",
        [](const std::vector<double>& sups, int p) {
            const MeanEstimate est = sup_moment(sups, p);
            return py::make_tuple(est.mean, est.std_error);
        },
        py::arg("sup_norms"), py::arg("p"));

    py::class_<OrderFitResult>(m, "OrderFitResult")
        .def_readonly("slope", &OrderFitResult::slope)
        .def_readonly("intercept", &OrderFitResult::intercept)
        .def_readonly("r_squared", &OrderFitResult::r_squared)
        .def_readonly("points_used", &OrderFitResult::points_used)
        .def_readonly("warnings", &OrderFitResult::warnings);
    m.def(
        "fit_order",
        [](const std::vector<double>& epsilons,
           const std::vector<double>& values,
           const std::vector<double>& std_errors) {
            return fit_order(epsilons, values, std_errors);
        },
        py::arg("epsilons"), py::arg("values"),
        py::arg("std_errors") = std::vector<double>{});
    m.def("fd_correction", &fd_correction, py::arg("bundle"), py::arg("f"),
          py::arg("q"), py::arg("u0"), py::arg("path"), py::arg("k"),
          py::arg("eps0"));

    py::class_<OrderStudyConfig>(m, "OrderStudyConfig")
        .def(py::init<>())
        .def_readwrite("epsilons", &OrderStudyConfig::epsilons)
        .def_readwrite("order", &OrderStudyConfig::order)
        .def_readwrite("moment_p", &OrderStudyConfig::moment_p)
        .def_readwrite("paths", &OrderStudyConfig::paths)
        .def_readwrite("horizon", &OrderStudyConfig::horizon)
        .def_readwrite("master_seed", &OrderStudyConfig::master_seed)
        .def_readwrite("threads", &OrderStudyConfig::threads);
    py::class_<OrderStudyRow>(m, "OrderStudyRow")
        .def_readonly("epsilon", &OrderStudyRow::epsilon)
        .def_readonly("median_sup", &OrderStudyRow::median_sup)
        .def_readonly("q25", &OrderStudyRow::q25)
        .def_readonly("q75", &OrderStudyRow::q75)
        .def_readonly("moment_estimate", &OrderStudyRow::moment_estimate)
        .def_readonly("moment_std_error", &OrderStudyRow::moment_std_error);
    py::class_<OrderStudyBlock>(m, "OrderStudyBlock")
        .def_readonly("order", &OrderStudyBlock::order)
        .def_readonly("rows", &OrderStudyBlock::rows)
        .def_readonly("sup_fit", &OrderStudyBlock::sup_fit)
        .def_readonly("moment_fit", &OrderStudyBlock::moment_fit)
        .def_readonly("shrink_violation_fraction",
                      &OrderStudyBlock::shrink_violation_fraction);
    py::class_<OrderStudyResult>(m, "OrderStudyResult")
        .def_readonly("blocks", &OrderStudyResult::blocks)
        .def_readonly("sups", &OrderStudyResult::sups)
        .def("block", &OrderStudyResult::block, py::arg("k"),
             py::return_value_policy::reference_internal);
    m.def("run_order_study", &run_order_study, py::arg("bundle"),
          py::arg("f"), py::arg("q"), py::arg("noise"), py::arg("u0"),
          py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readonly("preset", &ExperimentConfig::preset)
        .def_readonly("n_nodes", &ExperimentConfig::n_nodes)
        .def_readonly("xi", &ExperimentConfig::xi)
        .def_readonly("horizon", &ExperimentConfig::horizon)
        .def_readonly("dt", &ExperimentConfig::dt)
        .def_readonly("order", &ExperimentConfig::order)
        .def_readonly("moment_p", &ExperimentConfig::moment_p)
        .def_readonly("epsilons", &ExperimentConfig::epsilons)
        .def_readonly("paths", &ExperimentConfig::paths)
        .def_readonly("master_seed", &ExperimentConfig::master_seed)
        .def_readonly("threads", &ExperimentConfig::threads);
    m.def("fhn_preset", &fhn_preset);
    m.def("scalar_preset", &scalar_preset);
    m.def("load_config_text", &load_config_text, py::arg("text"));
    m.def("load_config_file", &load_config_file, py::arg("path"));

    py::class_<ProblemSetup>(m, "ProblemSetup")
        .def_readonly("config", &ProblemSetup::config)
        .def_property_readonly(
            "layout",
            [](const ProblemSetup& s) {
                return std::const_pointer_cast<SpaceLayout>(s.layout);
            })
        .def_property_readonly(
            "bundle",
            [](const ProblemSetup& s) -> const OperatorBundle& {
                return *s.bundle;
            },
            py::return_value_policy::reference_internal)
        .def_readonly("drift", &ProblemSetup::drift)
        .def_readonly("covariance", &ProblemSetup::covariance)
        .def_readonly("noise", &ProblemSetup::noise)
        .def_readonly("u0", &ProblemSetup::u0)
        .def_property_readonly("omega", &ProblemSetup::omega)
        .def_property_readonly("eta", &ProblemSetup::eta)
        .def_property_readonly("gap", &ProblemSetup::gap);
    m.def("assemble_problem", &assemble_problem, py::arg("config"));

    py::class_<ValidationCheck>(m, "ValidationCheck")
        .def_readonly("name", &ValidationCheck::name)
        .def_readonly("passed", &ValidationCheck::passed)
        .def_readonly("detail", &ValidationCheck::detail);
    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("omega", &ValidationReport::omega)
        .def_readonly("eta", &ValidationReport::eta)
        .def_readonly("gap", &ValidationReport::gap)
        .def_readonly("warnings", &ValidationReport::warnings)
        .def_readonly("checks", &ValidationReport::checks)
        .def("all_passed", &ValidationReport::all_passed);
    m.def("rate_report", &rate_report, py::arg("setup"));
    m.def("run_validation", &run_validation, py::arg("setup"),
          py::arg("seed"));

    m.def(
        "write_trajectory_csv",
        [](const std::string& path, const SpaceLayout& layout,
           const Trajectory& traj, int stride) {
            write_trajectory_csv(path, layout, traj, stride);
        },
        py::arg("path"), py::arg("layout"), py::arg("trajectory"),
        py::arg("stride") = 1);
}
