#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rpcd/bounds.hpp"
#include "rpcd/exactpoly.hpp"
#include "rpcd/experiments.hpp"
#include "rpcd/operators.hpp"
#include "rpcd/runners.hpp"
#include "rpcd/verify.hpp"
#include "rpcd/worstcase.hpp"

namespace py = pybind11;
using namespace rpcd;

namespace {

Matrix hessian_of(const QuadraticInstance& a) { return a.hessian; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "RCD / RPCD coordinate descent rates, operators and certificates";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

  // instances
  m.def("make_pi", [](int n, double s) { return hessian_of(make_pi(n, s)); }, py::arg("n"), py::arg("sigma"));
  m.def("make_block_pi", [](int n, int k, double s) { return hessian_of(make_block_pi(n, k, s)); }, py::arg("n"),
        py::arg("k"), py::arg("sigma"));
  m.def("random_unit_diag", [](int n, double s, std::uint64_t seed) { return hessian_of(random_unit_diag(n, s, seed)); },
        py::arg("n"), py::arg("sigma"), py::arg("seed"));
  m.def(
      "apply_sign_flip",
      [](const Matrix& a, const std::vector<int>& v) {
        QuadraticInstance q;
        q.n = static_cast<int>(a.rows());
        q.hessian = a;
        return hessian_of(apply_sign_flip(q, v));
      },
      py::arg("a"), py::arg("v"));
  m.def("lambda_min", &lambda_min);

  // runners
  m.def("rcd_step", &rcd_step, py::arg("a"), py::arg("x"), py::arg("i"));
  m.def("rpcd_epoch", &rpcd_epoch, py::arg("a"), py::arg("x"), py::arg("p"));
  m.def(
      "run_monte_carlo_json",
      [](const Matrix& a, const std::string& alg, long steps, int trials, int init_points, std::uint64_t seed) {
        QuadraticInstance q;
        q.n = static_cast<int>(a.rows());
        q.hessian = a;
        RunConfig c{algorithm_from_string(alg), steps, trials, init_points, seed};
        return to_json(run_monte_carlo(q, c)).dump();
      },
      py::arg("a"), py::arg("algorithm"), py::arg("steps"), py::arg("trials") = 10, py::arg("init_points") = 10,
      py::arg("seed") = 0);

  // operators
  m.def("rcd_operator_apply", &rcd_operator_apply);
  m.def("rpcd_operator_apply", &rpcd_operator_apply);
  m.def("rpcd_iteration_matrix", &rpcd_iteration_matrix);
  m.def("rpcd_operator_matrix", [](const Matrix& a) { return rpcd_operator_matrix(a).m; });
  m.def("rcd_operator_matrix", [](const Matrix& a) { return rcd_operator_matrix(a).m; });
  m.def("restricted_rpcd", [](int n, double s) { return Matrix(restricted_rpcd(n, s).m); });
  m.def("restricted_rcd", [](int n, double s) { return Matrix(restricted_rcd(n, s).m); });
  m.def("spectral_radius", [](const Matrix& x) { return spectral_radius(x); });
  m.def("family_max_rho", &family_max_rho);
  m.def("norm_upper_bound", [](const Matrix& a) { return norm_upper_bound(a).value; });
  m.def("norm_upper_bound_pi", [](int n, double s) { return norm_upper_bound_pi(n, s).value; });
  m.def(
      "norm_upper_bound_sampled",
      [](const Matrix& a, std::uint64_t samples, std::uint64_t seed) {
        NormBound b = norm_upper_bound_sampled(a, samples, seed);
        return std::make_pair(b.value, b.standard_error);
      },
      py::arg("a"), py::arg("samples"), py::arg("seed") = 0);

  // bounds
  m.def("rcd_lower_bound", &rcd_lower_bound);
  m.def("rpcd_upper_bound", &rpcd_upper_bound);
  m.def("rcd_lower_bound_pi", &rcd_lower_bound_pi);
  m.def("nonasymptotic_K0", &nonasymptotic_K0);
  m.def("rate_report_json", [](int n, double s) { return to_json(rate_report(n, s)).dump(); });

  // exact certificates
  m.def("verify_appendix_c_json", [] { return to_json(verify_appendix_c()).dump(); });
  m.def("worked_example_sequence", [] {
    std::vector<std::string> out;
    for (const auto& p : worked_example().sequence) out.push_back(p.to_string("s"));
    return out;
  });
  m.def("count_roots", [](const std::vector<std::string>& coeffs, const std::string& a, const std::string& b) {
    std::vector<Rational> c;
    for (const auto& s : coeffs) c.push_back(parse_rational(s));
    return count_roots(RationalPolynomial(c), parse_rational(a), parse_rational(b)).root_count;
  }, py::arg("coefficients"), py::arg("a"), py::arg("b"), "Distinct real roots in (a, b); coefficients low degree first.");

  // worst case
  m.def("search_json", [](int n, double s, std::uint64_t seed, int restarts) { return to_json(search(n, s, seed, restarts)).dump(); },
        py::arg("n"), py::arg("sigma"), py::arg("seed") = 1, py::arg("restarts") = 10);
  m.def("verify_operators_json", [](std::uint64_t seed) { return to_json(verify_operators(seed)).dump(); },
        py::arg("seed") = 0);
}
