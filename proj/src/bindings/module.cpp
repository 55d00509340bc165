#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "metivier/bounds.hpp"
#include "metivier/calculus.hpp"
#include "metivier/gaussian.hpp"
#include "metivier/group.hpp"
#include "metivier/normest.hpp"
#include "metivier/parallel.hpp"
#include "metivier/specfun.hpp"
#include "metivier/twisted.hpp"

namespace py = pybind11;
using namespace metivier;

namespace {

// 2D numpy <-> SampledField glue (n = 1 grids)
py::array_t<twisted::cplx> field_values(const twisted::SampledField& f) {
  const int n = f.grid.points_per_axis;
  py::array_t<twisted::cplx> out({n, n});
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

twisted::SampledField make_field(const twisted::GridSpec& grid,
                                 py::array_t<twisted::cplx, py::array::c_style |
                                                                py::array::forcecast>
                                     values) {
  twisted::SampledField f = twisted::zero_field(grid);
  if (static_cast<std::size_t>(values.size()) != f.values.size())
    throw std::invalid_argument("values shape does not match the grid");
  std::copy(values.data(), values.data() + values.size(), f.values.begin());
  f.validate();
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral restriction machinery on Metivier groups: special "
            "Hermite projectors, twisted Laplacians, the joint-calculus "
            "restriction operator and its exponent bookkeeping.";

  m.def("set_thread_count", &set_thread_count, py::arg("count"));

  // ---- special functions
  m.def("laguerre", &specfun::laguerre, py::arg("degree"), py::arg("alpha"),
        py::arg("x"));
  m.def(
      "special_hermite",
      [](int degree, int half_dim, double lam, double abs_z_squared) {
        return specfun::special_hermite_radial({degree, half_dim, lam}, abs_z_squared);
      },
      py::arg("degree"), py::arg("half_dim"), py::arg("lambda_"),
      py::arg("abs_z_squared"));
  m.def("special_hermite_l2_norm", &specfun::special_hermite_l2_norm,
        py::arg("degree"), py::arg("half_dim"), py::arg("lambda_"));
  m.def("laguerre_product_integral", &specfun::laguerre_product_integral,
        py::arg("j"), py::arg("k"), py::arg("alpha"), py::arg("abs_tol") = 1e-10);

  // ---- grids and projectors
  py::class_<twisted::GridSpec>(m, "GridSpec")
      .def(py::init([](int half_dim, double half_width, int points) {
             twisted::GridSpec g{half_dim, half_width, points};
             g.validate();
             return g;
           }),
           py::arg("half_dim") = 1, py::arg("half_width") = 8.0,
           py::arg("points_per_axis") = 128)
      .def_readonly("half_dim", &twisted::GridSpec::half_dim)
      .def_readonly("half_width", &twisted::GridSpec::half_width)
      .def_readonly("points_per_axis", &twisted::GridSpec::points_per_axis)
      .def("spacing", &twisted::GridSpec::spacing)
      .def("coord", &twisted::GridSpec::coord);

  py::class_<twisted::SampledField>(m, "SampledField")
      .def(py::init(&make_field), py::arg("grid"), py::arg("values"))
      .def_readonly("grid", &twisted::SampledField::grid)
      .def("values", &field_values)
      .def("l2_norm", [](const twisted::SampledField& f) { return twisted::l2_norm(f); });

  m.def("sample_special_hermite", &twisted::sample_special_hermite, py::arg("grid"),
        py::arg("degree"), py::arg("lambda_"));
  m.def("twisted_convolve", &twisted::twisted_convolve, py::arg("f"), py::arg("g"),
        py::arg("lambda_"));
  m.def("project", &twisted::project, py::arg("f"), py::arg("degree"),
        py::arg("lambda_"));
  m.def(
      "twisted_laplacian",
      [](const twisted::SampledField& f, double lam) {
        twisted::LaplacianResult r = twisted::twisted_laplacian(f, lam);
        return py::make_tuple(r.field, r.boundary_decay_ok, r.boundary_ratio);
      },
      py::arg("f"), py::arg("lambda_"));
  m.def("dilate", &twisted::dilate, py::arg("f"), py::arg("scale"));
  m.def("dilation_residual", &twisted::dilation_residual, py::arg("g"),
        py::arg("degree"), py::arg("lambda_"));
  m.def("reconstruct", &twisted::reconstruct, py::arg("f"), py::arg("lambda_"),
        py::arg("cutoff"));
  m.def("l2_distance",
        [](const twisted::SampledField& a, const twisted::SampledField& b) {
          return twisted::l2_distance(a, b);
        });
  m.def("save_field", &twisted::save_field, py::arg("field"), py::arg("path_prefix"));
  m.def("load_field", &twisted::load_field, py::arg("path_prefix"));

  // ---- step-two algebras
  py::class_<group::StepTwoAlgebra>(m, "StepTwoAlgebra")
      .def(py::init([](int half_dim, int center_dim,
                       const std::vector<Eigen::MatrixXd>& brackets) {
             group::StepTwoAlgebra a{half_dim, center_dim, brackets};
             a.validate();
             return a;
           }),
           py::arg("half_dim"), py::arg("center_dim"), py::arg("brackets"))
      .def_readonly("half_dim", &group::StepTwoAlgebra::half_dim)
      .def_readonly("center_dim", &group::StepTwoAlgebra::center_dim)
      .def_readonly("brackets", &group::StepTwoAlgebra::brackets)
      .def("j_omega", &group::StepTwoAlgebra::j_omega, py::arg("omega"));

  py::class_<group::SphereScanResult>(m, "SphereScanResult")
      .def_readonly("verdict", &group::SphereScanResult::verdict)
      .def_readonly("margin", &group::SphereScanResult::margin)
      .def_readonly("worst_omega", &group::SphereScanResult::worst_omega);

  m.def("heisenberg", &group::heisenberg, py::arg("half_dim") = 1);
  m.def("muller_seeger_example", &group::muller_seeger_example);
  m.def("muller_seeger_j", &group::muller_seeger_j, py::arg("z1"), py::arg("z2"));
  m.def("is_metivier", &group::is_metivier, py::arg("algebra"), py::arg("samples"));
  m.def("is_htype", &group::is_htype, py::arg("algebra"), py::arg("samples"));
  m.def("symplectic_normalize", &group::symplectic_normalize, py::arg("j"));
  m.def("standard_symplectic_form", &group::standard_symplectic_form,
        py::arg("half_dim"));
  m.def("save_algebra", &group::save_algebra, py::arg("algebra"), py::arg("path"));
  m.def("load_algebra", &group::load_algebra, py::arg("path"));

  // ---- joint functional calculus
  py::enum_<calculus::Family>(m, "Family")
      .value("homogeneous", calculus::Family::homogeneous)
      .value("inhomogeneous", calculus::Family::inhomogeneous);

  py::class_<calculus::CalculusSpec>(m, "CalculusSpec")
      .def(py::init([](calculus::Family family, double alpha, double beta,
                       double gamma) {
             calculus::CalculusSpec s{family, alpha, beta, gamma};
             s.validate();
             return s;
           }),
           py::arg("family"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"))
      .def_readonly("family", &calculus::CalculusSpec::family)
      .def_readonly("alpha", &calculus::CalculusSpec::alpha)
      .def_readonly("beta", &calculus::CalculusSpec::beta)
      .def_readonly("gamma", &calculus::CalculusSpec::gamma);

  py::class_<calculus::SpectralPoint>(m, "SpectralPoint")
      .def_readonly("mu", &calculus::SpectralPoint::mu)
      .def_readonly("mode", &calculus::SpectralPoint::mode)
      .def_readonly("root", &calculus::SpectralPoint::root)
      .def_readonly("derivative", &calculus::SpectralPoint::derivative);

  m.def("eval_m", &calculus::eval_m, py::arg("spec"), py::arg("a"), py::arg("b"));
  m.def("solve_mu_k", &calculus::solve_mu_k, py::arg("spec"), py::arg("mu"),
        py::arg("mode"), py::arg("half_dim") = 1);
  m.def("mu_in_range", &calculus::mu_in_range, py::arg("spec"), py::arg("mu"));

  // ---- exponent calculus
  py::class_<bounds::ExponentParams>(m, "ExponentParams")
      .def(py::init([](double alpha, double beta, double gamma, double p, double q,
                       double r, int n, int d) {
             bounds::ExponentParams e{alpha, beta, gamma, p, q, r, n, d};
             e.validate();
             return e;
           }),
           py::arg("alpha") = 1, py::arg("beta") = 1, py::arg("gamma") = 1,
           py::arg("p") = 1, py::arg("q") = 2, py::arg("r") = 1, py::arg("n") = 1,
           py::arg("d") = 1)
      .def_readonly("alpha", &bounds::ExponentParams::alpha)
      .def_readonly("beta", &bounds::ExponentParams::beta)
      .def_readonly("gamma", &bounds::ExponentParams::gamma)
      .def_readonly("p", &bounds::ExponentParams::p)
      .def_readonly("q", &bounds::ExponentParams::q)
      .def_readonly("r", &bounds::ExponentParams::r)
      .def_readonly("n", &bounds::ExponentParams::n)
      .def_readonly("d", &bounds::ExponentParams::d)
      .def("bracket", &bounds::ExponentParams::bracket)
      .def("excluded_endpoint", &bounds::ExponentParams::excluded_endpoint);

  py::class_<bounds::ExponentSet>(m, "ExponentSet")
      .def_readonly("A", &bounds::ExponentSet::A)
      .def_readonly("B", &bounds::ExponentSet::B)
      .def_readonly("C", &bounds::ExponentSet::C)
      .def_readonly("D", &bounds::ExponentSet::D)
      .def_readonly("nu", &bounds::ExponentSet::nu)
      .def_readonly("nu1", &bounds::ExponentSet::nu1)
      .def_readonly("s_star", &bounds::ExponentSet::s_star)
      .def_readonly("p_star", &bounds::ExponentSet::p_star);

  m.def("phi", &bounds::phi, py::arg("s"), py::arg("n"));
  m.def("exponents", &bounds::exponents, py::arg("params"));
  m.def(
      "nu_analysis",
      [](double p, double q, double r, int n, int d) {
        const bounds::NuAnalysis res = bounds::nu_analysis(p, q, r, n, d);
        const char* names = "abcd";
        return py::make_tuple(std::string(1, names[static_cast<int>(res.label)]),
                              res.nu);
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("n"), py::arg("d"));
  m.def(
      "series_bound",
      [](const calculus::CalculusSpec& spec, double mu,
         const bounds::ExponentParams& params, int cutoff) {
        const bounds::SeriesPoint sp = bounds::series_bound(spec, mu, params, cutoff);
        return py::make_tuple(sp.value, sp.tail_fraction, sp.terms);
      },
      py::arg("spec"), py::arg("mu"), py::arg("params"), py::arg("cutoff") = 64);
  m.def(
      "predicted_exponent",
      [](const calculus::CalculusSpec& spec, const bounds::ExponentParams& params,
         double mu) {
        const bounds::Prediction p = bounds::predicted_exponent(spec, params, mu);
        return py::make_tuple(std::string(1, p.letter), p.exponent, p.in_one_minus_mu,
                              p.regime);
      },
      py::arg("spec"), py::arg("params"), py::arg("mu"));
  m.def(
      "fit_loglog",
      [](const std::vector<std::pair<double, double>>& pts) {
        const bounds::LogLogFit f = bounds::fit_loglog(pts);
        return py::make_tuple(f.slope, f.intercept, f.max_residual);
      },
      py::arg("points"));

  // ---- operator norm estimation
  m.def(
      "projector_opnorm_1_to_2",
      [](const twisted::GridSpec& grid, int degree, double lam) {
        return normest::opnorm_1_to_2(normest::projector_operator(grid, degree, lam));
      },
      py::arg("grid"), py::arg("degree"), py::arg("lambda_"));
  m.def(
      "projector_opnorm",
      [](const twisted::GridSpec& grid, int degree, double lam, double p, double q,
         int iterations, int restarts, std::uint64_t seed) {
        const normest::PowerEstimate est = normest::opnorm_power(
            normest::projector_operator(grid, degree, lam), p, q, iterations, restarts,
            seed);
        return py::make_tuple(est.value, est.converged, est.method);
      },
      py::arg("grid"), py::arg("degree"), py::arg("lambda_"), py::arg("p"),
      py::arg("q"), py::arg("iterations") = 30, py::arg("restarts") = 4,
      py::arg("seed") = 1);
}
