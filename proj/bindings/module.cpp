#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dislo/config.hpp"
#include "dislo/curves.hpp"
#include "dislo/elasticity.hpp"
#include "dislo/errors.hpp"
#include "dislo/gb2d.hpp"
#include "dislo/gcz1d.hpp"
#include "dislo/micro2d.hpp"
#include "dislo/runner.hpp"
#include "dislo/spectral.hpp"
#include "dislo/sub1d.hpp"

namespace py = pybind11;
using namespace dislo;

namespace {

PeriodicField2D field_from_array(const py::array_t<double>& arr) {
  const auto buf = arr.unchecked<2>();
  PeriodicField2D f = PeriodicField2D::zeros(static_cast<int>(buf.shape(0)),
                                             static_cast<int>(buf.shape(1)));
  for (py::ssize_t i = 0; i < buf.shape(0); ++i) {
    for (py::ssize_t j = 0; j < buf.shape(1); ++j) {
      f.at(static_cast<int>(i), static_cast<int>(j)) = buf(i, j);
    }
  }
  return f;
}

py::array_t<double> array_from_field(const PeriodicField2D& f) {
  py::array_t<double> arr({f.n1, f.n2});
  auto buf = arr.mutable_unchecked<2>();
  for (int i = 0; i < f.n1; ++i) {
    for (int j = 0; j < f.n2; ++j) {
      buf(i, j) = f.at(i, j);
    }
  }
  return arr;
}

py::array_t<double> vertices_array(const Curve& c) {
  py::array_t<double> arr({static_cast<py::ssize_t>(c.vertices.size()),
                           static_cast<py::ssize_t>(2)});
  auto buf = arr.mutable_unchecked<2>();
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    buf(static_cast<py::ssize_t>(i), 0) = c.vertices[i][0];
    buf(static_cast<py::ssize_t>(i), 1) = c.vertices[i][1];
  }
  return arr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dislocation density dynamics: spectral Groma-Balogh transport, "
            "the 1D submodel, the regularized GCZ slab and lifted curve "
            "transport";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<CollisionError>(m, "CollisionError");
  py::register_exception<StepSizeError>(m, "StepSizeError");
  py::register_exception<InvalidStateError>(m, "InvalidStateError");
  py::register_exception<DegenerateGradientError>(m, "DegenerateGradientError");
  py::register_exception<TopologyError>(m, "TopologyError");
  py::register_exception<SingularPointError>(m, "SingularPointError");

  py::class_<ElasticConstants>(m, "ElasticConstants")
      .def_readonly("lambda_", &ElasticConstants::lambda)
      .def_readonly("mu", &ElasticConstants::mu)
      .def_readonly("nu", &ElasticConstants::nu)
      .def_readonly("a", &ElasticConstants::a)
      .def_readonly("a_bar", &ElasticConstants::a_bar)
      .def_readonly("c1", &ElasticConstants::c1)
      .def_readonly("c2", &ElasticConstants::c2)
      .def("__repr__", [](const ElasticConstants& ec) {
        return "ElasticConstants(lambda=" + std::to_string(ec.lambda) +
               ", mu=" + std::to_string(ec.mu) + ")";
      });

  m.def("derive_constants", &derive_constants, py::arg("lambda_"), py::arg("mu"));
  m.def("sigma0",
        [](double x1, double x2, const ElasticConstants& ec) {
          return kernel_sigma0(x1, x2, ec);
        },
        py::arg("x1"), py::arg("x2"), py::arg("constants"));
  m.def("full_stress",
        [](double x1, double x2, const ElasticConstants& ec) {
          const StressMatrix s = kernel_full_stress(x1, x2, ec);
          py::array_t<double> arr({3, 3});
          auto buf = arr.mutable_unchecked<2>();
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) buf(i, j) = s[i][j];
          return arr;
        },
        py::arg("x1"), py::arg("x2"), py::arg("constants"));

  m.def("riesz_transform",
        [](const py::array_t<double>& f, int axis) {
          return array_from_field(riesz_transform(field_from_array(f), axis));
        },
        py::arg("field"), py::arg("axis"));
  m.def("sigma12_from_rho_diff",
        [](const py::array_t<double>& f, const ElasticConstants& ec) {
          return array_from_field(sigma12_from_rho_diff(field_from_array(f), ec));
        },
        py::arg("rho_diff"), py::arg("constants"));
  m.def("antiderivative_x1",
        [](const py::array_t<double>& f) {
          return array_from_field(antiderivative_x1(field_from_array(f)));
        },
        py::arg("theta_diff"));
  m.def("zygmund_norm",
        [](const py::array_t<double>& f, double tol) {
          return zygmund_norm(field_from_array(f), tol);
        },
        py::arg("field"), py::arg("tol") = 1e-10);

  py::class_<ParticleSystem>(m, "ParticleSystem")
      .def(py::init([](const py::array_t<double>& positions,
                       const std::vector<int>& signs, double time) {
             const auto buf = positions.unchecked<2>();
             ParticleSystem s;
             for (py::ssize_t i = 0; i < buf.shape(0); ++i) {
               s.positions.push_back({buf(i, 0), buf(i, 1)});
             }
             s.signs = signs;
             s.time = time;
             s.validate();
             return s;
           }),
           py::arg("positions"), py::arg("signs"), py::arg("time") = 0.0)
      .def_property_readonly("positions",
                             [](const ParticleSystem& s) {
                               py::array_t<double> arr(
                                   {static_cast<py::ssize_t>(s.positions.size()),
                                    static_cast<py::ssize_t>(2)});
                               auto buf = arr.mutable_unchecked<2>();
                               for (std::size_t i = 0; i < s.positions.size(); ++i) {
                                 buf(static_cast<py::ssize_t>(i), 0) = s.positions[i][0];
                                 buf(static_cast<py::ssize_t>(i), 1) = s.positions[i][1];
                               }
                               return arr;
                             })
      .def_readonly("signs", &ParticleSystem::signs)
      .def_readonly("time", &ParticleSystem::time);

  m.def("pairwise_velocity", &pairwise_velocity, py::arg("system"),
        py::arg("constants"));
  m.def("step_particles", &step_particles, py::arg("system"), py::arg("dt"),
        py::arg("constants"), py::arg("min_separation") = 1e-6);
  m.def("empirical_density",
        [](const ParticleSystem& s, int n1, int n2, double width) {
          const auto [tp, tm] = empirical_density(s, n1, n2, width);
          return py::make_tuple(array_from_field(tp), array_from_field(tm));
        },
        py::arg("system"), py::arg("n1"), py::arg("n2"),
        py::arg("smoothing_width"));

  py::class_<GBState>(m, "GBState")
      .def_property_readonly("theta_plus",
                             [](const GBState& s) { return array_from_field(s.theta_plus); })
      .def_property_readonly("theta_minus",
                             [](const GBState& s) { return array_from_field(s.theta_minus); })
      .def_readonly("time", &GBState::time)
      .def_readonly("line_density_L", &GBState::line_density_L);

  m.def("make_gb_state",
        [](const py::array_t<double>& tp, const py::array_t<double>& tm,
           double L, double row_tol) {
          return make_gb_state(field_from_array(tp), field_from_array(tm), L, row_tol);
        },
        py::arg("theta_plus"), py::arg("theta_minus"), py::arg("line_density_L"),
        py::arg("row_tol") = 1e-8);
  m.def("random_smooth_state", &random_smooth_state, py::arg("n1"), py::arg("n2"),
        py::arg("line_density_L"), py::arg("amplitude"), py::arg("max_mode"),
        py::arg("seed"));
  m.def("compute_stress",
        [](const GBState& s, const ElasticConstants& ec) {
          return array_from_field(compute_stress(s, ec));
        },
        py::arg("state"), py::arg("constants"));
  m.def("stress_from_densities",
        [](const py::array_t<double>& tp, const py::array_t<double>& tm,
           const ElasticConstants& ec) {
          return array_from_field(
              stress_from_densities(field_from_array(tp), field_from_array(tm), ec));
        },
        py::arg("theta_plus"), py::arg("theta_minus"), py::arg("constants"));
  m.def("gb_step",
        [](const GBState& s, double dt, const ElasticConstants& ec) {
          return step(s, dt, ec);
        },
        py::arg("state"), py::arg("dt"), py::arg("constants"));
  m.def("entropy", &entropy, py::arg("state"));
  m.def("entropy_budget",
        [](const std::vector<GBState>& traj, const ElasticConstants& ec) {
          return entropy_budget(traj, ec);
        },
        py::arg("trajectory"), py::arg("constants"));

  py::class_<Sub1DState>(m, "Sub1DState")
      .def(py::init([](const std::vector<double>& rp, const std::vector<double>& rm,
                       double L, double time) {
             Sub1DState s;
             s.n = static_cast<int>(rp.size());
             s.rho_plus = rp;
             s.rho_minus = rm;
             s.line_density_L = L;
             s.time = time;
             s.validate();
             return s;
           }),
           py::arg("rho_plus"), py::arg("rho_minus"), py::arg("line_density_L"),
           py::arg("time") = 0.0)
      .def_readonly("n", &Sub1DState::n)
      .def_readonly("rho_plus", &Sub1DState::rho_plus)
      .def_readonly("rho_minus", &Sub1DState::rho_minus)
      .def_readonly("line_density_L", &Sub1DState::line_density_L)
      .def_readonly("time", &Sub1DState::time);

  m.def("random_monotone_state", &random_monotone_state, py::arg("n"),
        py::arg("line_density_L"), py::arg("roughness"), py::arg("seed"));
  m.def("velocity_field",
        [](const Sub1DState& s, const ElasticConstants& ec,
           std::optional<double> c2_override, double forcing) {
          return velocity_field(s, ec, c2_override, forcing);
        },
        py::arg("state"), py::arg("constants"), py::arg("c2_override") = py::none(),
        py::arg("forcing") = 0.0);
  m.def("sub1d_step",
        [](const Sub1DState& s, double dt, const ElasticConstants& ec,
           std::optional<double> c2_override, double forcing) {
          return step(s, dt, ec, c2_override, forcing);
        },
        py::arg("state"), py::arg("dt"), py::arg("constants"),
        py::arg("c2_override") = py::none(), py::arg("forcing") = 0.0);
  m.def("comparison_check", &comparison_check, py::arg("a"), py::arg("b"),
        py::arg("t_final"), py::arg("constants"), py::arg("cfl_factor") = 0.45,
        py::arg("tol") = 1e-10);

  py::class_<SlabState1D>(m, "SlabState1D")
      .def_readonly("n", &SlabState1D::n)
      .def_readonly("rho", &SlabState1D::rho)
      .def_readonly("kappa", &SlabState1D::kappa)
      .def_readonly("time", &SlabState1D::time)
      .def_readonly("c0", &SlabState1D::c0)
      .def_readonly("tau", &SlabState1D::tau)
      .def_readonly("epsilon", &SlabState1D::epsilon)
      .def("theta_plus_faces", &SlabState1D::theta_plus_faces)
      .def("theta_minus_faces", &SlabState1D::theta_minus_faces)
      .def("kappa_y_faces", &SlabState1D::kappa_y_faces);

  py::class_<GczDiagnostics>(m, "GczDiagnostics")
      .def_readonly("t", &GczDiagnostics::t)
      .def_readonly("residual", &GczDiagnostics::residual)
      .def_readonly("min_theta", &GczDiagnostics::min_theta)
      .def_readonly("min_kappa_y", &GczDiagnostics::min_kappa_y)
      .def_readonly("m_gamma", &GczDiagnostics::m_gamma)
      .def_readonly("max_rho_yyy", &GczDiagnostics::max_rho_yyy)
      .def_readonly("force_imbalance", &GczDiagnostics::force_imbalance);

  py::class_<GczRunOptions>(m, "GczRunOptions")
      .def(py::init<>())
      .def_readwrite("dt_factor", &GczRunOptions::dt_factor)
      .def_readwrite("gamma_floor_rel", &GczRunOptions::gamma_floor_rel)
      .def_readwrite("monitor_gamma", &GczRunOptions::monitor_gamma)
      .def_readwrite("D0", &GczRunOptions::D0)
      .def_readwrite("backstress_floor", &GczRunOptions::backstress_floor)
      .def_readwrite("snapshot_dt", &GczRunOptions::snapshot_dt);

  py::class_<GczRunResult>(m, "GczRunResult")
      .def_readonly("snapshots", &GczRunResult::snapshots)
      .def_readonly("diagnostics", &GczRunResult::diagnostics)
      .def_readonly("converged", &GczRunResult::converged)
      .def_readonly("final_residual", &GczRunResult::final_residual);

  m.def("gaussian_bump_state", &gaussian_bump_state, py::arg("n"), py::arg("c0"),
        py::arg("support"), py::arg("margin_fraction"), py::arg("tau"),
        py::arg("epsilon"));
  m.def("linear_kappa_state", &linear_kappa_state, py::arg("n"), py::arg("c0"),
        py::arg("rho_amplitude"), py::arg("tau"), py::arg("epsilon"));
  m.def("back_stress",
        [](const std::vector<double>& tp, const std::vector<double>& tm, double h,
           double D0, double floor) {
          const BackStress bs = back_stress(tp, tm, h, D0, floor);
          return py::make_tuple(bs.value, bs.flagged);
        },
        py::arg("theta_plus"), py::arg("theta_minus"), py::arg("h"),
        py::arg("D0") = 1.0, py::arg("floor") = 1e-8);
  m.def("step_regularized", &step_regularized, py::arg("state"), py::arg("dt"),
        py::arg("constants"), py::arg("gamma_floor") = 1e-8);
  m.def("monitor_lower_bound", &monitor_lower_bound, py::arg("state"),
        py::arg("gamma"));
  m.def("displacement", &displacement, py::arg("state"), py::arg("constants"));
  m.def("gcz_evolve", &evolve, py::arg("initial"), py::arg("constants"),
        py::arg("residual_tol"), py::arg("t_max"),
        py::arg("options") = GczRunOptions{});
  m.def("run_to_steady", &run_to_steady, py::arg("initial"), py::arg("constants"),
        py::arg("residual_tol"), py::arg("t_max"),
        py::arg("options") = GczRunOptions{});

  py::class_<VelocityField>(m, "VelocityField");
  m.def("constant_velocity", &constant_velocity, py::arg("value"));
  m.def("linear_velocity_x1", &linear_velocity_x1, py::arg("a"), py::arg("b"));

  py::class_<Curve>(m, "Curve")
      .def_static("make",
                  [](const py::array_t<double>& vertices) {
                    const auto buf = vertices.unchecked<2>();
                    std::vector<Vec2> v;
                    for (py::ssize_t i = 0; i < buf.shape(0); ++i) {
                      v.push_back({buf(i, 0), buf(i, 1)});
                    }
                    return Curve::make(std::move(v));
                  },
                  py::arg("vertices"))
      .def_static("circle",
                  [](double r, int m) { return Curve::circle(r, m); },
                  py::arg("radius"), py::arg("n_vertices"))
      .def_property_readonly("vertices", &vertices_array)
      .def_readonly("orientation", &Curve::orientation)
      .def("perimeter", &Curve::perimeter);

  py::class_<LiftedSample>(m, "LiftedSample")
      .def_property_readonly("y", [](const LiftedSample& s) {
        return py::make_tuple(s.y[0], s.y[1]);
      })
      .def_readonly("theta", &LiftedSample::theta)
      .def_readonly("g_weight", &LiftedSample::g_weight)
      .def_readonly("kappa_weight", &LiftedSample::kappa_weight);

  py::class_<LiftedMeasure>(m, "LiftedMeasure")
      .def_readonly("samples", &LiftedMeasure::samples)
      .def("total_g", &LiftedMeasure::total_g)
      .def("total_kappa", &LiftedMeasure::total_kappa);

  m.def("evolve_curve",
        [](const Curve& c, const VelocityField& v, double t, double dt,
           bool reparametrize) {
          EvolveOptions opts;
          opts.reparametrize = reparametrize;
          return evolve_curve(c, v, t, dt, opts);
        },
        py::arg("curve"), py::arg("velocity"), py::arg("t"), py::arg("dt"),
        py::arg("reparametrize") = false);
  m.def("lift_measures", &lift_measures, py::arg("curve"));

  py::class_<TestFunction>(m, "TestFunction");
  m.def("default_test_family", &default_test_family, py::arg("seed"),
        py::arg("center_box") = 2.5, py::arg("count") = 12);
  m.def("compatibility_residual",
        [](const LiftedMeasure& measure, const std::vector<TestFunction>& fam) {
          return compatibility_residual(measure, fam);
        },
        py::arg("measure"), py::arg("family"));
  m.def("transport_residual",
        [](const std::vector<LiftedMeasure>& traj, const VelocityField& v,
           double t0, double dt, int orientation,
           const std::vector<TestFunction>& fam) {
          return transport_residual(traj, v, t0, dt, orientation, fam);
        },
        py::arg("trajectory"), py::arg("velocity"), py::arg("t0"), py::arg("dt"),
        py::arg("orientation"), py::arg("family"));

  py::class_<SimConfig>(m, "SimConfig")
      .def("__repr__", [](const SimConfig& c) { return config_to_json(c); });
  m.def("parse_config",
        [](const std::string& text) {
          const ConfigParseResult r = parse_config(text);
          if (!r.ok()) {
            std::string msg = "invalid config:";
            for (const std::string& e : r.errors) msg += "\n  " + e;
            throw ValidationError(msg);
          }
          return *r.config;
        },
        py::arg("text"));
  m.def("run_simulation", &run_simulation, py::arg("config"));
}
