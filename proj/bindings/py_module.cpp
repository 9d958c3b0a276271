#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orientwave/characteristics.hpp"
#include "orientwave/dispersion.hpp"
#include "orientwave/elastic.hpp"
#include "orientwave/hs_ops.hpp"
#include "orientwave/oned_pde.hpp"
#include "orientwave/periodic.hpp"
#include "orientwave/polarized.hpp"
#include "orientwave/scenarios.hpp"

namespace py = pybind11;
using namespace orientwave;

namespace {

CurveFn curve_from_callables(py::function f, py::function df, double lo, double hi) {
    return CurveFn{[f](double x) { return f(x).cast<double>(); },
                   [df](double x) { return df(x).cast<double>(); }, lo, hi};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "orientation waves in a director field: dispersion algebra, exact "
              "twist-wave solutions, HS/CH structure checks, and scenario runners";

    py::register_exception<Error>(m, "OrientwaveError");

    py::class_<ElasticConstants>(m, "ElasticConstants")
        .def(py::init<double, double, double>(), py::arg("alpha"), py::arg("beta"),
             py::arg("gamma"))
        .def_readonly("alpha", &ElasticConstants::alpha)
        .def_readonly("beta", &ElasticConstants::beta)
        .def_readonly("gamma", &ElasticConstants::gamma)
        .def_readonly("strict", &ElasticConstants::strict);

    py::class_<OneDSpeeds>(m, "OneDSpeeds")
        .def_readonly("a", &OneDSpeeds::a)
        .def_readonly("b", &OneDSpeeds::b)
        .def_readonly("q", &OneDSpeeds::q)
        .def_readonly("a_prime", &OneDSpeeds::a_prime)
        .def_readonly("b_prime", &OneDSpeeds::b_prime)
        .def_readonly("q_prime", &OneDSpeeds::q_prime);
    m.def("one_d_speeds", &one_d_speeds, py::arg("phi"), py::arg("constants"));
    m.def("polarized_constants", &polarized_constants, py::arg("constants"));

    py::class_<WaveFrame>(m, "WaveFrame")
        .def_readonly("k", &WaveFrame::k)
        .def_readonly("n0", &WaveFrame::n0)
        .def_readonly("omega_splay", &WaveFrame::omega_splay)
        .def_readonly("omega_twist", &WaveFrame::omega_twist)
        .def_readonly("R", &WaveFrame::R)
        .def_readonly("S", &WaveFrame::S)
        .def_readonly("degenerate", &WaveFrame::degenerate);
    m.def("dispersion", &dispersion, py::arg("k"), py::arg("n0"), py::arg("constants"));
    m.def("genuine_nonlinearity_gamma", &genuine_nonlinearity_gamma);
    m.def("twist_degeneracy_check", &twist_degeneracy_check, py::arg("frame"),
          py::arg("constants"), py::arg("h") = 1e-5);
    m.def("lambda_coefficient", &lambda_coefficient);

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("Unique", SolveStatus::Unique)
        .value("ResonantSolvable", SolveStatus::ResonantSolvable)
        .value("ResonantUnsolvable", SolveStatus::ResonantUnsolvable);
    py::class_<ConstrainedSolveResult>(m, "ConstrainedSolveResult")
        .def_readonly("status", &ConstrainedSolveResult::status)
        .def_readonly("m", &ConstrainedSolveResult::m)
        .def_readonly("lam", &ConstrainedSolveResult::lambda)
        .def_readonly("nullspace", &ConstrainedSolveResult::nullspace);
    m.def("constrained_solve", &constrained_solve, py::arg("k"), py::arg("n0"),
          py::arg("omega"), py::arg("constants"), py::arg("F"), py::arg("G"));

    m.def("riccati_sigma", &riccati_sigma, py::arg("sigma0"), py::arg("bprime"),
          py::arg("t"));

    py::class_<Profile>(m, "Profile")
        .def_static("constant", &Profile::constant)
        .def_static("gaussian_bump", &Profile::gaussian_bump, py::arg("amplitude"),
                    py::arg("center"), py::arg("width"))
        .def_static("smoothed_box", &Profile::smoothed_box, py::arg("amplitude"),
                    py::arg("left"), py::arg("right"), py::arg("ramp"))
        .def_static("sine", &Profile::sine, py::arg("amplitude"), py::arg("wavenumber"),
                    py::arg("phase") = 0.0)
        .def("value", &Profile::value)
        .def("d1", &Profile::d1)
        .def("d2", &Profile::d2)
        .def("d3", &Profile::d3);

    py::class_<CurveFn>(m, "CurveFn");
    m.def("to_curve", &to_curve);
    m.def("curve", &curve_from_callables, py::arg("f"), py::arg("df"), py::arg("lo"),
          py::arg("hi"));

    py::class_<TimeFunction>(m, "TimeFunction");
    m.def("zero_time_fn", &zero_time_fn);
    m.def("constant_time_fn", &constant_time_fn);
    m.def("riccati_time_fn", &riccati_time_fn, py::arg("sigma0"), py::arg("bprime"));

    py::class_<SamplePoint>(m, "SamplePoint")
        .def_readonly("u", &SamplePoint::u)
        .def_readonly("v", &SamplePoint::v)
        .def_readonly("u_x", &SamplePoint::u_x);
    py::class_<CharSolution>(m, "CharSolution")
        .def_readonly("eta_minus", &CharSolution::eta_minus)
        .def_readonly("eta_plus", &CharSolution::eta_plus)
        .def_readonly("q_total", &CharSolution::q_total)
        .def_readonly("t_star", &CharSolution::t_star)
        .def_readonly("horizon", &CharSolution::horizon)
        .def_readonly("constant_profile", &CharSolution::constant_profile)
        .def("sigma_plus", &CharSolution::sigma_plus)
        .def("sigma_minus", &CharSolution::sigma_minus)
        .def("sample",
             [](const CharSolution& s, double x, double t) { return s.sample(x, t); })
        .def("sample_grid", [](const CharSolution& s, const std::vector<double>& xs,
                               double t) { return s.sample_grid(xs, t); });
    m.def(
        "build_char_solution",
        [](const CurveFn& F, const TimeFunction& sm, double sp0, double horizon) {
            return build_char_solution(F, sm, sp0, horizon);
        },
        py::arg("F"), py::arg("sigma_minus"), py::arg("sigma_plus0"), py::arg("horizon"));

    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init([](double lo, double hi, int n) { return Grid1D{lo, hi, n}; }),
             py::arg("x_min"), py::arg("x_max"), py::arg("n"))
        .def_readonly("x_min", &Grid1D::x_min)
        .def_readonly("x_max", &Grid1D::x_max)
        .def_readonly("n", &Grid1D::n)
        .def("h", &Grid1D::h)
        .def("nodes", &Grid1D::nodes);

    py::enum_<MKind>(m, "MKind").value("HS", MKind::HS).value("CH", MKind::CH);
    m.def(
        "v_to_u",
        [](const std::vector<double>& v, MKind kind, const Grid1D& g, double value,
           double slope) { return v_to_u(v, kind, g, LeftAnchor{value, slope}); },
        py::arg("v"), py::arg("kind"), py::arg("grid"), py::arg("left_value") = 0.0,
        py::arg("left_slope") = 0.0);
    m.def("u_to_v",
          [](const std::vector<double>& mdens, const Grid1D& g) { return u_to_v(mdens, g); });
    m.def("hamiltonian_H", [](const std::vector<double>& v, MKind kind,
                              const Grid1D& g) { return hamiltonian_H(v, kind, g); });
    m.def("momentum_P",
          [](const std::vector<double>& v, const Grid1D& g) { return momentum_P(v, g); });

    py::enum_<AnchorSide>(m, "AnchorSide")
        .value("Left", AnchorSide::Left)
        .value("Right", AnchorSide::Right);
    py::class_<UVState>(m, "UVState")
        .def_readonly("v", &UVState::v)
        .def_readonly("u", &UVState::u)
        .def_readonly("w", &UVState::w)
        .def_readonly("sigma_minus", &UVState::sigma_minus)
        .def_readonly("sigma_plus", &UVState::sigma_plus)
        .def_readonly("time", &UVState::time);
    m.def(
        "make_uv_state",
        [](const CurveFn& F, const Grid1D& g, AnchorSide side, double anchor) {
            return make_uv_state(F, g, side, anchor);
        },
        py::arg("F"), py::arg("grid"), py::arg("side"), py::arg("anchor"));
    m.def("uveq_fd_step", &uveq_fd_step, py::arg("state"), py::arg("dt"),
          py::arg("ux_ceiling") = 1e9);

    py::class_<AngleFieldState>(m, "AngleFieldState")
        .def_readonly("phi", &AngleFieldState::phi)
        .def_readonly("psi", &AngleFieldState::psi)
        .def_readonly("phi_t", &AngleFieldState::phi_t)
        .def_readonly("psi_t", &AngleFieldState::psi_t)
        .def_readonly("time", &AngleFieldState::time);
    m.def("twist_ic",
          [](double eps, double phi0, const Profile& f, const Profile& g, const Grid1D& grid,
             const ElasticConstants& c) { return twist_ic(eps, phi0, f, g, grid, c); });
    m.def("oned_step", [](const AngleFieldState& s, double dt,
                          const ElasticConstants& c) { return step(s, dt, c); });
    m.def("oned_energy", [](const AngleFieldState& s,
                            const ElasticConstants& c) { return energy(s, c); });

    py::class_<MeanFieldOrbit>(m, "MeanFieldOrbit")
        .def_readonly("period", &MeanFieldOrbit::period)
        .def_readonly("E", &MeanFieldOrbit::E)
        .def_readonly("fixed_point", &MeanFieldOrbit::fixed_point)
        .def_readonly("T", &MeanFieldOrbit::T)
        .def_readonly("phi", &MeanFieldOrbit::phi)
        .def_readonly("phi_T", &MeanFieldOrbit::phi_T);
    m.def("meanfield_orbit", &meanfield_orbit);
    py::class_<PeriodConstants>(m, "PeriodConstants")
        .def_readonly("Lambda", &PeriodConstants::Lambda)
        .def_readonly("M", &PeriodConstants::M)
        .def_readonly("M_alt", &PeriodConstants::M_alt)
        .def("mu", &PeriodConstants::mu);
    m.def("period_constants", &period_constants);

    m.def("run_scenario_json", [](const std::string& config_text) {
        return run_scenario(parse_config(config_text)).to_json();
    });
}
