#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "qccr/boundary.hpp"
#include "qccr/checks.hpp"
#include "qccr/fock.hpp"
#include "qccr/io.hpp"
#include "qccr/parse.hpp"
#include "qccr/single_mode.hpp"
#include "qccr/wick.hpp"

namespace py = pybind11;
using namespace qccr;

namespace {

std::string normal_form(const std::string& expr, std::optional<double> q, std::size_t modes) {
  if (!q) return to_string(wick::normalize(parse_polynomial(expr, modes)));
  return to_string(wick::normalize(parse_float_polynomial(expr, *q, modes), QParam::numeric(*q)));
}

// Exact mode returns the rational function as text, float mode a complex number.
py::object expectation(const std::string& expr, const std::vector<Complex>& phi, std::optional<double> q) {
  if (!q) {
    wick::ModeVector<RationalFunction> exact;
    for (Complex z : phi) exact.emplace_back(GaussianRational::from_complex(z));
    return py::str(to_string(wick::coherent_expectation(parse_polynomial(expr, phi.size()), exact)));
  }
  const auto p = parse_float_polynomial(expr, *q, phi.size());
  return py::cast(wick::coherent_expectation(p, phi, QParam::numeric(*q)));
}

py::dict fock_rep(std::size_t d, double q, int N) {
  const auto rep = fock::build_fock_rep(d, QParam::numeric(q), N);
  rep.require_matrices();
  py::dict out;
  out["d"] = d;
  out["q"] = q;
  out["N"] = N;
  out["A"] = rep.A;
  out["Adag"] = rep.Adag;
  out["transform"] = rep.transform;
  out["grading"] = rep.grading;
  return out;
}

py::dict clifford_dict(const boundary::CliffordRep& rep) {
  py::dict out;
  out["modes"] = rep.modes;
  out["r"] = rep.r;
  out["dim"] = rep.dim;
  out["s"] = rep.s;
  out["directions"] = rep.directions;
  out["label"] = rep.label ? py::cast(*rep.label) : py::none();
  return out;
}

py::dict clifford_rep(const Eigen::MatrixXcd& theta) {
  const auto reps = boundary::clifford_rep({theta});
  py::list irreducible;
  for (const auto& r : reps.irreducible) irreducible.append(clifford_dict(r));
  py::dict out;
  out["full"] = clifford_dict(reps.full);
  out["irreducible"] = irreducible;
  return out;
}

py::list results_to_python(const std::vector<checks::CheckResult>& results) {
  py::list out;
  for (const auto& r : results) {
    py::list ms;
    for (const auto& m : r.measurements) {
      py::dict md;
      md["label"] = m.label;
      md["measured"] = m.measured;
      md["relation"] = m.relation == checks::Relation::AtMost ? "<=" : ">=";
      md["bound"] = m.bound;
      md["tolerance"] = m.tolerance;
      md["passed"] = m.passed;
      ms.append(md);
    }
    py::dict rd;
    rd["id"] = r.id;
    rd["description"] = r.description;
    rd["passed"] = r.passed();
    rd["measurements"] = ms;
    out.append(rd);
  }
  return out;
}

py::list verify(const std::string& suite, const std::vector<double>& q, std::size_t d, int N) {
  const auto s = checks::parse_suite(suite);
  if (!s) throw py::value_error("unknown suite '" + suite + "'");
  checks::SuiteConfig cfg;
  cfg.q_values = q;
  cfg.d = d;
  cfg.N = N;
  std::vector<checks::CheckResult> out;
  {
    py::gil_scoped_release release;
    checks::run_suite(*s, cfg, out);
  }
  return results_to_python(out);
}

py::list acceptance(std::size_t criterion) {
  if (criterion < 1 || criterion > checks::acceptance_count())
    throw py::index_error("criteria are numbered 1.." + std::to_string(checks::acceptance_count()));
  std::vector<checks::CheckResult> out;
  {
    py::gil_scoped_release release;
    checks::run_criterion(criterion - 1, out);
  }
  return results_to_python(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "q-deformed commutation relations: Wick engine, Fock representations and checks";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<fock::BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<fock::StateViolation>(m, "StateViolation", PyExc_ValueError);

  m.def("normal_form", &normal_form, py::arg("expr"), py::arg("q") = py::none(), py::arg("modes") = 0,
        "Normal-ordered form as text; symbolic q unless a numeric q is given.");
  m.def("expectation", &expectation, py::arg("expr"), py::arg("phi"), py::arg("q") = py::none(),
        "Coherent-state value: text in exact mode, complex with numeric q.");
  m.def("fock_rep", &fock_rep, py::arg("d"), py::arg("q"), py::arg("N"),
        "Truncated Fock representation with matrices in an orthonormal basis.");
  m.def(
      "shift_norm",
      [](double q, int N) {
        const auto n = single_mode::shift_norm(QParam::numeric(q), N);
        return py::make_tuple(n.numeric, n.closed_form);
      },
      py::arg("q"), py::arg("N"), "(numeric, closed_form) norm of the single-mode annihilator.");
  m.def(
      "beta_bounds",
      [](double q, double tol) {
        const auto b = single_mode::beta_bounds(QParam::numeric(q), tol);
        return py::make_tuple(b.minus.value, b.plus.value);
      },
      py::arg("q"), py::arg("tol") = 1e-15, "(beta_minus, beta_plus).");
  m.def(
      "epsilon", [](double s, double tol) { return single_mode::epsilon(s, tol).value; }, py::arg("s"),
      py::arg("tol") = 1e-15);
  m.def("epsilon_threshold", &single_mode::epsilon_threshold, py::arg("tol") = 1e-12);
  m.def("clifford_rep", &clifford_rep, py::arg("theta"), "Clifford representation for a symmetric form theta.");
  m.def(
      "coherent_theta", [](const std::vector<Complex>& phi) { return boundary::coherent_theta(phi).theta; },
      py::arg("phi"));
  m.def("verify", &verify, py::arg("suite"), py::arg("q") = std::vector<double>{0.5}, py::arg("d") = 2,
        py::arg("N") = 6, "Run one check suite; returns a list of result dicts.");
  m.def("acceptance", &acceptance, py::arg("criterion"), "Run one acceptance criterion (1-based).");
  m.def(
      "export_fock", [](std::size_t d, double q, int N) {
        return io::export_fock(fock::build_fock_rep(d, QParam::numeric(q), N)).dump();
      },
      py::arg("d"), py::arg("q"), py::arg("N"), "Export document as a JSON string.");
}
