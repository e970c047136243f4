// Python bindings for the main operations: pure-state entropy, the exact
// phase-damping relative entropy, the amplitude-damping upper bound, the
// separability border, and the master-equation verification harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmsv/amplitude_damping.hpp"
#include "tmsv/phase_damping.hpp"
#include "tmsv/squeezed_state.hpp"
#include "tmsv/sweep.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace tmsv;

namespace {

SweepModel model_from_string(const std::string& name) {
  if (name == "phase") return SweepModel::Phase;
  if (name == "amplitude") return SweepModel::Amplitude;
  throw std::invalid_argument("model must be 'phase' or 'amplitude'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Decoherence of two-mode squeezed vacuum states: exact relative "
      "entropy of entanglement under phase damping and a convexity upper "
      "bound under thermal amplitude damping.";

  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  py::class_<Diagnostics>(m, "Diagnostics")
      .def_readonly("trace_deficit", &Diagnostics::trace_deficit)
      .def_readonly("min_eigenvalue", &Diagnostics::min_eigenvalue)
      .def_readonly("eigensolver_residual", &Diagnostics::eigensolver_residual)
      .def_readonly("k_cutoff", &Diagnostics::k_cutoff)
      .def("__repr__", [](const Diagnostics& d) {
        return "Diagnostics(trace_deficit=" + format_double(d.trace_deficit) +
               ", min_eigenvalue=" + format_double(d.min_eigenvalue) +
               ", k_cutoff=" + std::to_string(d.k_cutoff) + ")";
      });

  py::class_<EntanglementResult>(m, "EntanglementResult")
      .def_readonly("bits", &EntanglementResult::bits)
      .def_property_readonly(
          "kind",
          [](const EntanglementResult& r) { return to_string(r.kind); })
      .def_readonly("diagnostics", &EntanglementResult::diagnostics)
      .def("__repr__", [](const EntanglementResult& r) {
        return "EntanglementResult(bits=" + format_double(r.bits) +
               ", kind='" + to_string(r.kind) + "')";
      });

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_property_readonly(
          "model", [](const VerifyReport& r) { return to_string(r.model); })
      .def_readonly("r", &VerifyReport::r)
      .def_readonly("d", &VerifyReport::d)
      .def_readonly("nbar", &VerifyReport::nbar)
      .def_readonly("oracle_trunc", &VerifyReport::oracle_trunc)
      .def_readonly("steps", &VerifyReport::steps)
      .def_readonly("max_abs_deviation", &VerifyReport::max_abs_deviation)
      .def_readonly("trace_drift", &VerifyReport::trace_drift)
      .def_readonly("tolerance", &VerifyReport::tolerance)
      .def_readonly("passed", &VerifyReport::passed)
      .def("__repr__",
           [](const VerifyReport& r) { return to_text(r); });

  m.def(
      "pure_entanglement_bits",
      [](double r) { return pure_entanglement_bits(SqueezeParams(r)); },
      "r"_a, "Entanglement entropy in bits of the undamped state.");

  m.def(
      "schmidt_probabilities",
      [](double r, int trunc, double tail_ceiling) {
        return schmidt_distribution(SqueezeParams(r), trunc, tail_ceiling)
            .probs;
      },
      "r"_a, "trunc"_a = 100, "tail_ceiling"_a = 1e-12,
      "Fock-basis Schmidt probabilities p_n = tanh^{2n} r / cosh^2 r.");

  m.def(
      "phase_relative_entropy",
      [](double r, double d, int trunc, double tail_ceiling) {
        return relative_entropy_exact(
            build_phase_matrix(PhasePoint(r, d), trunc, tail_ceiling));
      },
      "r"_a, "d"_a, "trunc"_a = 100, "tail_ceiling"_a = 1e-12,
      "Exact relative entropy of entanglement of the phase-damped state.");

  m.def(
      "amplitude_upper_bound",
      [](double r, double d, double nbar, int trunc, double eps_block) {
        return upper_bound_er(AmplitudePoint(r, d, nbar), trunc, eps_block);
      },
      "r"_a, "d"_a, "nbar"_a, "trunc"_a = 100, "eps_block"_a = 1e-12,
      "Convexity upper bound on the relative entropy of entanglement of the "
      "thermally amplitude-damped state.");

  m.def("separability_border", &separability_border, "r"_a, "nbar"_a,
        "d* = ln[1 + (1 - e^{-2r}) / (2 nbar)]; separable iff d >= d*.");

  m.def(
      "is_separable",
      [](double r, double d, double nbar) {
        return is_separable(AmplitudePoint(r, d, nbar));
      },
      "r"_a, "d"_a, "nbar"_a);

  m.def(
      "verify_channel",
      [](const std::string& model, double r, double d, double nbar,
         int oracle_trunc, int steps) {
        return run_verify(model_from_string(model), r, d, nbar, oracle_trunc,
                          steps);
      },
      "model"_a, "r"_a, "d"_a, "nbar"_a = 0.0, "oracle_trunc"_a = 12,
      "steps"_a = 0,
      "Elementwise comparison of the analytic solution against a fixed-step "
      "RK4 integration of the master equation.");

#ifdef TMSV_VERSION
  m.attr("__version__") = TMSV_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
