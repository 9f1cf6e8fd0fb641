#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bernq/acceleration.hpp"
#include "bernq/arnoldi.hpp"
#include "bernq/bernoulli.hpp"
#include "bernq/bvp.hpp"
#include "bernq/errors.hpp"
#include "bernq/experiments.hpp"
#include "bernq/fourier.hpp"
#include "bernq/matfunc.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using bernq::cplx;

bernq::KernelForm parse_form(const std::string& form) {
  if (form == "residual") return bernq::KernelForm::residual;
  if (form == "powers") return bernq::KernelForm::powers;
  throw std::invalid_argument("form must be 'residual' or 'powers'");
}

bernq::PlanOptions plan_options(const std::string& form, int threads) {
  bernq::PlanOptions o;
  o.form = parse_form(form);
  o.threads = threads;
  return o;
}

std::string to_csv(const bernq::ExperimentReport& report, bool timing) {
  std::ostringstream out;
  report.write_csv(out, timing);
  return out.str();
}

// Exact rationals cross as "p/q" strings; the package wraps them in Fraction.
std::vector<std::string> exact_coefficients(int k) {
  std::vector<std::string> out;
  for (const auto& c : bernq::shared_bernoulli_table().exact_coefficients(k)) {
    out.push_back(c.str());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_bernq, m) {
  m.doc() = "Accelerated Fourier approximations of q(tau, w) = w e^{w tau} / (e^w - 1) and its matrix action";

  py::register_exception<bernq::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<bernq::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // Scalars.
  m.def("bernoulli", [](int k, double tau) { return bernq::shared_bernoulli_table()(k, tau); },
        "k"_a, "tau"_a, "B_k(tau) from exact rational coefficients.");
  m.def("_bernoulli_coefficients", &exact_coefficients, "k"_a);
  m.def("lanczos_polynomial",
        [](int p, double tau, cplx w) {
          return bernq::lanczos_polynomial(bernq::shared_bernoulli_table(), p, tau, w);
        },
        "p"_a, "tau"_a, "w"_a);
  m.def("reference_q", &bernq::reference_q, "tau"_a, "w"_a);
  m.def("lanczos_coefficients",
        [](int p, int k, cplx w) {
          const auto c = bernq::lanczos_coefficients(p, k, w);
          return py::make_tuple(c.c, c.s);
        },
        "p"_a, "k"_a, "w"_a, "Cosine and sine coefficients (c_k, s_k).");
  m.def("g_approx",
        [](int p, int N, double tau, cplx w) { return bernq::g_approx({p, N, 0, tau, w}); },
        "p"_a, "N"_a, "tau"_a, "w"_a);
  m.def("G_approx",
        [](int p, int N, int ell, double tau, cplx w) { return bernq::G_approx({p, N, ell, tau, w}); },
        "p"_a, "N"_a, "ell"_a, "tau"_a, "w"_a);
  m.def("q0_shift",
        [](cplx w, int p, int N, int ell, double alpha) {
          return bernq::q0_shift(w, alpha, bernq::builtin_exp(), {p, N, ell, 0.0, w});
        },
        "w"_a, "p"_a = 2, "N"_a = 100, "ell"_a = 3, "alpha"_a = bernq::kDefaultShiftAlpha);
  m.def("residual_l2", &bernq::residual_l2, "p"_a, "w"_a, "N"_a, "K"_a);
  m.def("delta_of_N", &bernq::delta_of_N, "z"_a, "N"_a, "K"_a);

  // Operators and grids.
  py::class_<bernq::BandedOperator>(m, "BandedOperator")
      .def_static("tridiagonal", &bernq::BandedOperator::tridiagonal, "sub"_a, "diag"_a, "super"_a)
      .def_static("dense", &bernq::BandedOperator::dense, "matrix"_a)
      .def_property_readonly("size", &bernq::BandedOperator::size)
      .def_property_readonly("is_tridiagonal", &bernq::BandedOperator::is_tridiagonal)
      .def("apply", &bernq::BandedOperator::apply, "x"_a)
      .def("to_dense", &bernq::BandedOperator::to_dense)
      .def("norm1", &bernq::BandedOperator::norm1);

  py::class_<bernq::Grid>(m, "Grid")
      .def_readonly("nodes", &bernq::Grid::nodes)
      .def_property_readonly("interior_size", &bernq::Grid::interior_size)
      .def_property_readonly("length", &bernq::Grid::length);
  m.def("uniform_grid", &bernq::uniform_grid, "a"_a, "s"_a);
  m.def("geometric_grid", &bernq::geometric_grid, "x1"_a, "sigma"_a, "s"_a);
  m.def("discretize_laplacian", &bernq::discretize_laplacian, "grid"_a);
  m.def("circulant_shift", &bernq::circulant_shift, "s"_a, "scale"_a);

  // Matrix functions.
  py::class_<bernq::LanczosActionPlan>(m, "LanczosActionPlan")
      .def(py::init([](const bernq::BandedOperator& a, const Eigen::VectorXd& f, int p, int N, int ell,
                       const std::string& form, int threads) {
             return bernq::LanczosActionPlan(a, f, p, N, ell, plan_options(form, threads));
           }),
           "a"_a, "f"_a, "p"_a, "N"_a, "ell"_a = 0, "form"_a = "residual", "threads"_a = 1,
           py::keep_alive<1, 2>())
      .def_property_readonly("solve_count", &bernq::LanczosActionPlan::solve_count)
      .def("evaluate",
           [](const bernq::LanczosActionPlan& plan, double tau, std::optional<int> ell) {
             return plan.evaluate(tau, ell.value_or(plan.ell()));
           },
           "tau"_a, "ell"_a = py::none());
  m.def("g_action",
        [](const bernq::BandedOperator& a, int p, int N, double tau, const Eigen::VectorXd& f,
           const std::string& form) {
          return bernq::g_action(a, {p, N, 0, tau, 0.0}, f, plan_options(form, 1));
        },
        "a"_a, "p"_a, "N"_a, "tau"_a, "f"_a, "form"_a = "residual");
  m.def("G_action",
        [](const bernq::BandedOperator& a, int p, int N, int ell, double tau, const Eigen::VectorXd& f,
           const std::string& form) {
          return bernq::G_action(a, {p, N, ell, tau, 0.0}, f, plan_options(form, 1));
        },
        "a"_a, "p"_a, "N"_a, "ell"_a, "tau"_a, "f"_a, "form"_a = "residual");
  m.def("expm", &bernq::expm_dense, "x"_a);
  m.def("phi1", &bernq::phi1_dense, "x"_a);
  m.def("reference_solution", &bernq::reference_solution, "a"_a, "tau"_a, "f"_a);
  m.def("reference_solution_dense", &bernq::reference_solution_dense, "a"_a, "tau"_a, "f"_a);

  // Arnoldi.
  py::class_<bernq::KrylovDecomposition>(m, "KrylovDecomposition")
      .def_readonly("V", &bernq::KrylovDecomposition::V)
      .def_readonly("H", &bernq::KrylovDecomposition::H)
      .def_readonly("beta", &bernq::KrylovDecomposition::beta)
      .def_readonly("h_next", &bernq::KrylovDecomposition::h_next)
      .def_readonly("breakdown", &bernq::KrylovDecomposition::breakdown)
      .def_property_readonly("steps", &bernq::KrylovDecomposition::steps)
      .def("q_approx", &bernq::arnoldi_q_approx, "tau"_a)
      .def("orthogonality_loss", &bernq::orthogonality_loss);
  m.def("arnoldi",
        [](const bernq::BandedOperator& a, const Eigen::VectorXd& f, int j, bool reorthogonalize) {
          bernq::ArnoldiOptions o;
          o.reorthogonalize = reorthogonalize;
          return bernq::arnoldi_extend(a, f, j, o);
        },
        "a"_a, "f"_a, "j"_a, "reorthogonalize"_a = false);
  m.def("arnoldi_residual", &bernq::arnoldi_residual, "a"_a, "dec"_a);

  // Experiment drivers, returning the CSV text the CLI writes.
  m.def("delta_table",
        [](std::vector<double> z, std::vector<int> N, int K, bool timing) {
          bernq::DeltaTableConfig c;
          c.z = std::move(z);
          c.N = std::move(N);
          c.K = K;
          return to_csv(bernq::cmd_delta_table(c), timing);
        },
        "z"_a = std::vector<double>{1.0, 0.1, 10.0}, "N"_a = std::vector<int>{512, 1024, 2048},
        "K"_a = 2048, "timing"_a = false);
  m.def("scalar_error",
        [](double w_min, double w_max, int points, int N, std::vector<double> tau, std::vector<int> p,
           std::vector<int> ell, bool timing) {
          bernq::ScalarErrorConfig c;
          c.w_min = w_min;
          c.w_max = w_max;
          c.points = points;
          c.N = N;
          c.tau = std::move(tau);
          c.p = std::move(p);
          c.ell = std::move(ell);
          return to_csv(bernq::cmd_scalar_error(c), timing);
        },
        "w_min"_a = -10.0, "w_max"_a = 0.0, "points"_a = 400, "N"_a = 100,
        "tau"_a = std::vector<double>{0.125, 0.0078125}, "p"_a = std::vector<int>{2, 4, 6},
        "ell"_a = std::vector<int>{0, 1, 2, 3}, "timing"_a = false);
  m.def("bvp_compare",
        [](const std::string& grid, int s, std::vector<double> tau, std::vector<int> N, std::vector<int> n,
           std::vector<int> ell, bool timing) {
          bernq::BvpConfig c;
          if (grid == "geometric") {
            c.grid = bernq::BvpConfig::GridChoice::geometric;
          } else if (grid != "uniform") {
            throw std::invalid_argument("grid must be 'uniform' or 'geometric'");
          }
          c.s = s;
          c.tau = std::move(tau);
          c.N = std::move(N);
          c.n = std::move(n);
          c.ell = std::move(ell);
          return to_csv(bernq::cmd_bvp_compare(c), timing);
        },
        "grid"_a = "uniform", "s"_a = 512, "tau"_a = std::vector<double>{1.0 / 12.0, 1.0 / 6.0},
        "N"_a = std::vector<int>{50, 100, 200}, "n"_a = std::vector<int>{2, 3, 4},
        "ell"_a = std::vector<int>{2, 3, 4}, "timing"_a = false);
  m.def("arnoldi_compare",
        [](int test, int steps, int s, bool reorthogonalize, bool timing) {
          bernq::ArnoldiConfig c;
          c.test = test;
          c.steps = steps;
          c.s = s;
          c.reorthogonalize = reorthogonalize;
          return to_csv(bernq::cmd_arnoldi_compare(c), timing);
        },
        "test"_a = 3, "steps"_a = 100, "s"_a = 512, "reorthogonalize"_a = false, "timing"_a = false);
}
