#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hhokit/cli.hpp"
#include "hhokit/errors.hpp"

namespace py = pybind11;
using namespace hhokit;

namespace {

std::vector<DiffPoly> parse_all(const std::vector<std::string>& exprs, int n) {
  ParseOptions o;
  o.n = n;
  std::vector<DiffPoly> out;
  for (const auto& e : exprs) out.push_back(parse_diffpoly(e, o));
  return out;
}

std::vector<std::string> print_all(const std::vector<DiffPoly>& v) {
  std::vector<std::string> out;
  for (const auto& d : v) out.push_back(to_string(d));
  return out;
}

EvolutionSystem general(const std::vector<std::string>& f) {
  return EvolutionSystem::general(parse_all(f, static_cast<int>(f.size())));
}

cli::TaskOptions task_options(const std::string& op, std::optional<int> order, std::optional<int> degree,
                              const std::string& denominator, std::uint64_t seed, bool full) {
  cli::TaskOptions o;
  o.operator_name = op;
  o.order = order;
  o.degree = degree;
  o.denominator = denominator;
  o.seed = seed;
  o.full = full;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact checks and searches for homogeneous Hamiltonian operators";
  m.attr("__version__") = cli::kVersion;

  static py::exception<Error> error(m, "Error");
  static py::exception<InputError> input_error(m, "InputError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      py::set_error(input_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("normal_form", [](const std::string& e) { return to_string(parse_diffpoly(e)); },
        "Parse an expression and print its normal form.");
  m.def("total_x", [](const std::string& e) { return to_string(total_x(parse_diffpoly(e))); });

  m.def("cotangent_rules", [](const std::vector<std::string>& f) { return print_all(build_cotangent(general(f)).pt_rules()); },
        py::arg("f"), "p_t rules of the cotangent covering of u_t = f.");

  m.def(
      "bivector_residual",
      [](const std::vector<std::string>& f, const std::vector<std::string>& components) {
        const auto ctx = build_cotangent(general(f));
        return print_all(bivector_residual(ctx, BivectorForm{parse_all(components, static_cast<int>(f.size()))}));
      },
      py::arg("f"), py::arg("components"), "ℓ_F(A(p)) on the covering; empty strings are zero components.");

  m.def(
      "find_bivectors",
      [](const std::vector<std::string>& f, int order, int degree) {
        const int n = static_cast<int>(f.size());
        const auto fam = find_bivectors(general(f), make_operator_ansatz(n, order, degree));
        std::vector<std::vector<std::string>> basis;
        for (const auto& b : fam.forms) basis.push_back(print_all(b.components));
        return basis;
      },
      py::arg("f"), py::arg("order") = 3, py::arg("degree") = 1, "Canonical basis of the bivector family.");

  m.def("examples", [] {
    std::vector<std::string> names;
    for (const auto& e : cli::examples_catalog()) names.push_back(e.name);
    return names;
  });
  m.def("example_document", [](const std::string& name) {
    for (const auto& e : cli::examples_catalog()) {
      if (e.name == name) return e.document;
    }
    throw InputError("unknown example '" + name + "'");
  });

  m.def(
      "run_task",
      [](const std::string& document, const std::string& command, const std::string& op, std::optional<int> order,
         std::optional<int> degree, const std::string& denominator, std::uint64_t seed, bool full) {
        const auto p = cli::load_problem_text(document);
        const auto r = cli::run_task(p, command, task_options(op, order, degree, denominator, seed, full));
        const int code = r.status == cli::Status::Fail ? 1 : 0;
        return cli::make_report(p, "python", command, r, code).dump();
      },
      py::arg("document"), py::arg("command"), py::arg("operator") = "", py::arg("order") = py::none(),
      py::arg("degree") = py::none(), py::arg("denominator") = "1", py::arg("seed") = 1, py::arg("full") = false,
      "Run one task on a JSON problem document; returns the report as JSON text.");

  m.def(
      "main",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface; returns (exit code, stdout, stderr).");
}
