#include "dh/commands.hpp"
#include "dh/lambdamod.hpp"
#include "dh/scenarios.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;

namespace {

py::list checks_list(const dh::CheckReport& rep) {
    py::list out;
    for (const auto& e : rep.entries)
        out.append(py::make_tuple(e.label, e.pass, e.detail));
    return out;
}

} // namespace

PYBIND11_MODULE(_dh, m) {
    m.doc() = "Derived p-adic heights over finite Iwasawa modules";

    auto base = py::register_exception<dh::Error>(m, "Error");
    py::register_exception<dh::DomainError>(m, "DomainError", base);
    auto prec = py::register_exception<dh::PrecisionError>(m, "PrecisionError", base);
    py::register_exception<dh::IndeterminateError>(m, "IndeterminateError", prec);
    py::register_exception<dh::CapError>(m, "CapError", base);
    py::register_exception<dh::ValidationError>(m, "ValidationError", base);

    m.attr("DEFAULT_MAX_SIZE") = dh::kDefaultEnumerationCap;

    // Same dispatch as the CLI, JSON output. Returns (exit_code, stdout, stderr).
    m.def(
        "run_command",
        [](const std::string& name, std::optional<std::string> input, std::uint64_t seed, size_t max_size,
           int max_r, std::optional<int> ord, std::optional<int> level, std::optional<int> s_plus,
           std::optional<int> s_minus) {
            dh::CommandOptions opt;
            opt.input = std::move(input);
            opt.format = dh::OutputFormat::Json;
            opt.seed = seed;
            opt.max_size = max_size;
            opt.max_r = max_r;
            opt.ord = ord;
            opt.level = level;
            opt.s_plus = s_plus;
            opt.s_minus = s_minus;
            std::ostringstream out, err;
            int rc;
            {
                py::gil_scoped_release nogil;
                rc = dh::run_command(name, opt, out, err);
            }
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("name"), py::kw_only(), py::arg("input") = py::none(), py::arg("seed") = 0,
        py::arg("max_size") = dh::kDefaultEnumerationCap, py::arg("max_r") = 4, py::arg("ord") = py::none(),
        py::arg("level") = py::none(), py::arg("s_plus") = py::none(), py::arg("s_minus") = py::none());

    m.def(
        "shape_dims",
        [](int e_infinity, const std::vector<std::pair<int, int>>& j_blocks, int r_max) {
            dh::ElementaryShape s;
            s.e_infinity = e_infinity;
            s.j_blocks = j_blocks;
            s.validate();
            return dh::shape_dims(s, r_max);
        },
        py::arg("e_infinity"), py::arg("j_blocks"), py::arg("r_max"));

    m.def(
        "infer_invariants",
        [](const std::vector<int>& dims) {
            auto inv = dh::infer_invariants(dims);
            return py::make_tuple(inv.e, inv.e_infinity);
        },
        py::arg("dims"), "(e_1, e_2, ...) and e_inf from the derived dimensions.");

    m.def(
        "anticyclotomic_prediction",
        [](int s_plus, int s_minus) {
            dh::ScenarioInput inp{s_plus, s_minus};
            inp.validate();
            auto pred = dh::anticyclotomic_prediction(inp);
            py::dict d;
            d["e1"] = pred.e1;
            d["e2"] = pred.e2;
            d["e_infinity"] = pred.shape.e_infinity;
            d["j_blocks"] = pred.shape.j_blocks;
            d["parity_flags"] = pred.parity_flags;
            d["checks"] = checks_list(pred.checks);
            return d;
        },
        py::arg("s_plus"), py::arg("s_minus"));

    m.def("degeneracy_floor", [](int s_plus, int s_minus) {
        dh::ScenarioInput inp{s_plus, s_minus};
        inp.validate();
        return dh::degeneracy_floor(inp);
    });
}
