#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qss/harness.hpp"
#include "qss/oracle.hpp"
#include "qss/pauli.hpp"
#include "qss/protocol/engine.hpp"

namespace py = pybind11;

namespace {

qss::ScenarioConfig scenario(const qss::Settings& settings, std::uint64_t seed) {
    qss::ScenarioConfig c = qss::scenario_from(settings);
    c.master_seed = seed;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of qss_sim";
    m.attr("version") = std::string(qss::kToolVersion);

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const qss::ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const qss::IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        }
    });

    m.def("setting_keys", &qss::setting_keys);

    m.def(
        "validate",
        [](const qss::Settings& settings) {
            const auto spec = qss::batch_spec_from(settings);
            qss::validate(spec.scenario);
            return qss::plan_sampling(spec.scenario).message_positions;
        },
        py::arg("settings"), "Checks a scenario; returns the number of message positions.");

    m.def(
        "run_json",
        [](const qss::Settings& settings, std::uint64_t seed, bool transcript) {
            const auto c = scenario(settings, seed);
            qss::RunReport report;
            {
                py::gil_scoped_release release;
                report = qss::run_scenario(c);
            }
            return qss::to_json(report, transcript).dump();
        },
        py::arg("settings"), py::arg("seed") = 0, py::arg("transcript") = false,
        "One trial; returns the report as JSON text.");

    m.def(
        "run_batch_jsonl",
        [](const qss::Settings& settings) {
            const auto spec = qss::batch_spec_from(settings);
            std::ostringstream out;
            {
                py::gil_scoped_release release;
                qss::emit_report(qss::run_batch(spec), qss::OutputFormat::JsonLines, out);
            }
            return out.str();
        },
        py::arg("settings"), "A batch; returns the JSON-lines report.");

    m.def(
        "swap_rule",
        [](const std::string& left, const std::string& right, const std::string& measured) {
            return std::string(qss::to_string(qss::swap_rule(qss::parse_bell_label(left), qss::parse_bell_label(right),
                                                             qss::parse_bell_label(measured))));
        },
        py::arg("left"), py::arg("right"), py::arg("measured"));
    m.def(
        "decode_bell_to_pauli",
        [](const std::string& label) {
            return std::string(qss::to_string(qss::decode_bell_to_pauli(qss::parse_bell_label(label))));
        },
        py::arg("label"));

    auto o = m.def_submodule("oracle", "Brute-force statevector reference values");
    o.def("substituted_decoy_pass_rate", &qss::oracle::substituted_decoy_pass_rate);
    o.def("xor_replacement_mismatch_rate", &qss::oracle::xor_replacement_mismatch_rate);
    o.def("intercept_resend_check_error", &qss::oracle::intercept_resend_check_error, py::arg("prob_eve_z"));
    o.def("intercept_resend_information", &qss::oracle::intercept_resend_information, py::arg("prob_eve_z"));
    o.def(
        "decoy_error", [](double pz) { return qss::oracle::decoy_error(pz); }, py::arg("prob_eve_z"));
}
