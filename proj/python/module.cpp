#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qecco/codes/registry.hpp"
#include "qecco/losses/composite.hpp"
#include "qecco/losses/distinguishability.hpp"
#include "qecco/losses/operation_loss.hpp"
#include "qecco/optim/harness.hpp"
#include "qecco/simcore/linalg.hpp"
#include "qecco/simcore/random.hpp"

namespace py = pybind11;
using namespace qecco;

namespace {

AnsatzClass make_ansatz_class(const std::string& variant, std::size_t repetitions,
                              std::size_t violations, std::uint64_t violation_seed,
                              bool invert_ctrl) {
    const auto v = ansatz_variant_from_label(variant);
    if (!v) throw std::invalid_argument("unknown ansatz variant: " + variant);
    AnsatzClass cls;
    cls.variant = *v;
    cls.repetitions = repetitions;
    cls.violations = violations;
    cls.violation_seed = violation_seed;
    cls.invert_ctrl = invert_ctrl;
    return cls;
}

py::dict run_to_dict(const TrainRun& run) {
    py::dict d;
    d["seed"] = run.seed;
    d["success"] = run.success;
    d["final_params"] = run.final_params;
    d["worst_diag"] = run.final_worst_diag;
    d["d_s"] = run.final_d_s;
    d["dbar"] = run.final_dbar;
    d["dbar_down"] = run.dbar_down;
    py::list gates;
    for (const auto& g : run.gates) {
        py::dict gd;
        gd["gate"] = g.gate;
        gd["worst_diag"] = g.worst_diag;
        gd["success"] = g.success;
        gd["psi"] = g.psi;
        gates.append(gd);
    }
    d["gates"] = gates;
    py::list avg, worst, ds;
    for (const auto& e : run.epochs) {
        avg.append(e.avg_loss);
        worst.append(e.worst_diag);
        ds.append(e.d_s);
    }
    d["trace_avg"] = avg;
    d["trace_worst_diag"] = worst;
    d["trace_d_s"] = ds;
    return d;
}

TrainConfig config_with(std::size_t epochs, double epsilon) {
    TrainConfig c = TrainConfig::operation();
    if (epochs > 0) c.lbfgs.epochs = epochs;
    c.epsilon = epsilon;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "learning logical operations and noise-tailored encodings for QEC codes";

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<std::size_t>(), py::arg("num_qubits"))
        .def(py::init<std::size_t, std::vector<cplx>>(), py::arg("num_qubits"),
             py::arg("amplitudes"))
        .def_static("basis", &StateVector::basis, py::arg("num_qubits"), py::arg("index"))
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.data(); })
        .def("norm", &StateVector::norm);

    py::class_<PauliChannel>(m, "PauliChannel")
        .def(py::init<double, double, double>(), py::arg("px"), py::arg("py"), py::arg("pz"))
        .def_static("bitflip", &PauliChannel::bitflip, py::arg("p"))
        .def_static("depolarizing", &PauliChannel::depolarizing, py::arg("p"))
        .def_static("asymmetric_depolarizing", &PauliChannel::asymmetric_depolarizing,
                    py::arg("p") = 0.1, py::arg("c") = 0.5)
        .def_readonly("px", &PauliChannel::px)
        .def_readonly("py", &PauliChannel::py)
        .def_readonly("pz", &PauliChannel::pz);

    py::class_<Code>(m, "Code")
        .def_readonly("name", &Code::name)
        .def_readonly("n", &Code::n)
        .def_readonly("k", &Code::k)
        .def_property_readonly("distance",
                               [](const Code& c) -> py::object {
                                   if (c.distance) return py::int_(*c.distance);
                                   return py::none();
                               })
        .def_property_readonly("encoder_param_count", &Code::encoder_param_count);

    m.def("list_codes", [] {
        py::list out;
        for (const auto& info : list_codes()) {
            py::dict d;
            d["name"] = info.name;
            d["alias"] = info.alias;
            d["n"] = info.n;
            d["available"] = info.available;
            out.append(d);
        }
        return out;
    });
    m.def("make_code", &make_code, py::arg("name"));
    m.def("rea_code", &Code::from_rea, py::arg("n"), py::arg("layers"), py::arg("seed"));
    m.def("known_gates", [] { return known_target_gates(); });

    m.def(
        "encode",
        [](const Code& code, const StateVector& logical, const std::vector<double>& theta) {
            return encode(code, logical, theta);
        },
        py::arg("code"), py::arg("logical"), py::arg("theta") = std::vector<double>{});
    m.def(
        "encode_two_block",
        [](const Code& code, const StateVector& logical, const std::vector<double>& theta) {
            return encode_two_block(code, logical, theta);
        },
        py::arg("code"), py::arg("logical"), py::arg("theta") = std::vector<double>{});
    m.def("fidelity_pure", &fidelity_pure, py::arg("a"), py::arg("b"));
    m.def("haar_random_state",
          py::overload_cast<std::size_t, std::uint64_t>(&haar_random_state), py::arg("num_qubits"),
          py::arg("seed"));

    py::class_<OperationLossEvaluator>(m, "OperationLoss")
        .def(py::init([](const std::string& code, const std::string& gate,
                         const std::string& ansatz, std::size_t repetitions,
                         const std::string& pairs, std::size_t violations,
                         std::uint64_t violation_seed, bool invert_ctrl) {
                 const Code c = make_code(code);
                 const auto variant = pair_set_from_label(pairs);
                 if (!variant) throw std::invalid_argument("unknown pair set: " + pairs);
                 return OperationLossEvaluator(
                     c, TargetGate::from_name(gate),
                     OperationAnsatz{make_ansatz_class(ansatz, repetitions, violations,
                                                       violation_seed, invert_ctrl),
                                     c.n},
                     *variant);
             }),
             py::arg("code"), py::arg("gate"), py::arg("ansatz") = "transversal",
             py::arg("repetitions") = 1, py::arg("pairs") = "block", py::arg("violations") = 0,
             py::arg("violation_seed") = 0, py::arg("invert_ctrl") = false)
        .def_property_readonly("param_count", &OperationLossEvaluator::param_count)
        .def("avg_loss",
             [](const OperationLossEvaluator& e, const std::vector<double>& psi) {
                 return e.avg_loss(psi);
             })
        .def("worst_diag",
             [](const OperationLossEvaluator& e, const std::vector<double>& psi) {
                 return e.worst_diag(psi);
             })
        .def("operation_error",
             [](const OperationLossEvaluator& e, std::size_t i, std::size_t j,
                const std::vector<double>& psi) { return e.operation_error(i, j, psi); })
        .def("gradient",
             [](const OperationLossEvaluator& e, const std::vector<double>& psi) {
                 return e.gradient(psi);
             })
        .def("gram_target",
             [](const OperationLossEvaluator& e) { return e.gram_target().entries; })
        .def("gram_prediction",
             [](const OperationLossEvaluator& e, const std::vector<double>& psi) {
                 return e.gram_prediction(psi).entries;
             })
        .def("state_labels",
             [](const OperationLossEvaluator& e) { return e.design().labels; });

    m.def(
        "train_operation",
        [](const std::string& code, const std::string& gate, const std::string& ansatz,
           std::size_t repetitions, const std::string& pairs, std::uint64_t seed,
           std::size_t epochs, double epsilon) {
            LossSpec spec;
            spec.code = make_code(code);
            spec.target = TargetGate::from_name(gate);
            spec.ansatz =
                OperationAnsatz{make_ansatz_class(ansatz, repetitions, 0, 0, false), spec.code.n};
            const auto variant = pair_set_from_label(pairs);
            if (!variant) throw std::invalid_argument("unknown pair set: " + pairs);
            spec.pairs = *variant;
            return run_to_dict(train_operation(spec, seed, config_with(epochs, epsilon)));
        },
        py::arg("code"), py::arg("gate"), py::arg("ansatz") = "transversal",
        py::arg("repetitions") = 1, py::arg("pairs") = "block", py::arg("seed") = 1,
        py::arg("epochs") = 0, py::arg("epsilon") = 1e-5);

    m.def(
        "train_varqec",
        [](std::size_t n, std::size_t layers, std::uint64_t rea_seed, const PauliChannel& noise,
           std::uint64_t seed, std::size_t epochs) {
            const Code code = Code::from_rea(n, layers, rea_seed);
            TrainConfig config = TrainConfig::varqec();
            if (epochs > 0) config.lbfgs.epochs = epochs;
            return run_to_dict(train_varqec(code, noise, seed, config));
        },
        py::arg("n"), py::arg("layers"), py::arg("rea_seed"), py::arg("noise"), py::arg("seed") = 1,
        py::arg("epochs") = 0);

    m.def(
        "train_vareftqc",
        [](std::size_t n, std::size_t layers, std::uint64_t rea_seed, const PauliChannel& noise,
           const std::vector<std::string>& gates, const std::vector<std::string>& ansatzes,
           const std::vector<std::size_t>& repetitions, double gamma, bool warm_start,
           std::uint64_t seed, std::size_t epochs) {
            const Code code = Code::from_rea(n, layers, rea_seed);
            std::vector<CompositeObjective::GateTerm> terms;
            for (std::size_t g = 0; g < gates.size(); ++g) {
                const std::string variant =
                    g < ansatzes.size() ? ansatzes[g]
                                        : (gates[g][0] == 'C' ? "transversal-ctrl" : "transversal");
                const std::size_t reps = g < repetitions.size() ? repetitions[g] : 1;
                terms.push_back(
                    {TargetGate::from_name(gates[g]),
                     OperationAnsatz{make_ansatz_class(variant, reps, 0, 0, false), code.n}});
            }
            CompositeObjective objective(code, noise, std::move(terms), gamma);
            std::optional<std::vector<double>> warm;
            if (warm_start) {
                warm = train_varqec(code, noise, seed, TrainConfig::varqec()).final_params;
            }
            TrainConfig config = TrainConfig::vareftqc(warm_start);
            if (epochs > 0) config.lbfgs.epochs = epochs;
            return run_to_dict(train_vareftqc(objective, seed, config, warm));
        },
        py::arg("n"), py::arg("layers"), py::arg("rea_seed"), py::arg("noise"), py::arg("gates"),
        py::arg("ansatzes") = std::vector<std::string>{},
        py::arg("repetitions") = std::vector<std::size_t>{}, py::arg("gamma") = -1.0,
        py::arg("warm_start") = true, py::arg("seed") = 1, py::arg("epochs") = 0);

    m.def(
        "lost_trace_distance",
        [](const std::string& code, const PauliChannel& noise, const StateVector& rho,
           const StateVector& sigma, const std::vector<double>& theta) {
            return lost_trace_distance(make_code(code), theta, noise, rho, sigma);
        },
        py::arg("code"), py::arg("noise"), py::arg("rho"), py::arg("sigma"),
        py::arg("theta") = std::vector<double>{});
    m.def(
        "distinguishability_loss",
        [](const Code& code, const std::vector<double>& theta, const PauliChannel& noise) {
            return distinguishability_loss(code, theta, noise);
        },
        py::arg("code"), py::arg("theta"), py::arg("noise"));
    m.def(
        "worst_distinguishability",
        [](const Code& code, const std::vector<double>& theta, const PauliChannel& noise) {
            const auto r = worst_distinguishability(code, theta, noise);
            py::dict d;
            d["value"] = r.value;
            d["theta"] = r.theta;
            d["phi"] = r.phi;
            return d;
        },
        py::arg("code"), py::arg("theta"), py::arg("noise"));

    m.attr("__version__") = "0.1.0";
}
