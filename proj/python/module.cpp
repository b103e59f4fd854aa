// Python bindings for the main operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "z2flux/gibbs.hpp"
#include "z2flux/lattice.hpp"
#include "z2flux/rpchess.hpp"
#include "z2flux/transport.hpp"

namespace py = pybind11;
using namespace z2flux;

namespace {

GaugeConfig config_from_list(int L, const std::vector<int>& sigma) {
  GaugeConfig cfg = GaugeConfig::all_plus(L);
  if (sigma.size() != cfg.sigma.size()) {
    throw std::invalid_argument("sigma needs 2*L^2 entries");
  }
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] != 1 && sigma[i] != -1) {
      throw std::invalid_argument("bond values must be +-1");
    }
    cfg.sigma[i] = static_cast<std::int8_t>(sigma[i]);
  }
  return cfg;
}

Parity parity_of(const std::string& name) {
  if (name == "even") return Parity::even;
  if (name == "odd") return Parity::odd;
  throw std::invalid_argument("parity must be 'even' or 'odd'");
}

}  // namespace

PYBIND11_MODULE(_z2flux, m) {
  m.doc() = "Ising gauge theory with fermionic matter at half filling";

  py::class_<FluxSector>(m, "FluxSector")
      .def_readonly("L", &FluxSector::L)
      .def_readonly("a", &FluxSector::a)
      .def_readonly("b", &FluxSector::b)
      .def_property_readonly("phi",
                             [](const FluxSector& s) {
                               return std::vector<int>(s.phi.begin(),
                                                       s.phi.end());
                             })
      .def("zero_flux_count", &FluxSector::zero_flux_count)
      .def("to_json", &FluxSector::to_json)
      .def_static("from_json", &FluxSector::from_json);

  py::class_<GaugeConfig>(m, "GaugeConfig")
      .def_readonly("L", &GaugeConfig::L)
      .def_property_readonly("sigma",
                             [](const GaugeConfig& c) {
                               return std::vector<int>(c.sigma.begin(),
                                                       c.sigma.end());
                             })
      .def("to_json", &GaugeConfig::to_json)
      .def_static("from_json", &GaugeConfig::from_json);

  py::class_<PartitionPair>(m, "PartitionPair")
      .def_readonly("log_z_plus", &PartitionPair::log_z_plus)
      .def_readonly("z_minus_sign", &PartitionPair::z_minus_sign)
      .def_readonly("log_abs_z_minus", &PartitionPair::log_abs_z_minus)
      .def_readonly("beta", &PartitionPair::beta)
      .def("to_json", &PartitionPair::to_json);

  py::class_<InequalityReport>(m, "InequalityReport")
      .def_readonly("lhs", &InequalityReport::lhs)
      .def_readonly("rhs", &InequalityReport::rhs)
      .def_readonly("slack", &InequalityReport::slack)
      .def_readonly("passed", &InequalityReport::passed)
      .def_readonly("degenerate", &InequalityReport::degenerate);

  py::class_<ResponseSample>(m, "ResponseSample")
      .def_readonly("p2", &ResponseSample::p2)
      .def_readonly("value", &ResponseSample::value)
      .def_readonly("method", &ResponseSample::method);

  m.def("all_plus", &GaugeConfig::all_plus, py::arg("L"));
  m.def("config_from_bonds", &config_from_list, py::arg("L"),
        py::arg("sigma"));
  m.def(
      "random_config",
      [](int L, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return GaugeConfig::random(L, rng);
      },
      py::arg("L"), py::arg("seed") = 0);
  m.def(
      "random_sector",
      [](int L, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return FluxSector::random(L, rng);
      },
      py::arg("L"), py::arg("seed") = 0);
  m.def("uniform_sector", &FluxSector::uniform, py::arg("L"), py::arg("value"),
        py::arg("a") = 1, py::arg("b") = 1);
  m.def("staggered_sector", &FluxSector::staggered, py::arg("L"),
        py::arg("a") = 1, py::arg("b") = 1);

  m.def("flux_of", &flux_of);
  m.def("representative", &representative);
  m.def("gauge_transform", [](const GaugeConfig& cfg,
                              const std::vector<int>& vertices) {
    std::vector<std::uint8_t> mask(cfg.L * cfg.L, 0);
    for (int v : vertices) mask.at(v) = 1;
    return gauge_transform(cfg, mask);
  });

  m.def("hopping_matrix", &hopping_matrix, py::arg("config"), py::arg("t"));
  m.def("eigenvalues",
        [](const GaugeConfig& cfg, double t) {
          return Eigen::VectorXd(
              eigenvalues_only(hopping_matrix(cfg, t)));
        });
  m.def("partition_pair",
        [](const Eigen::VectorXd& values, double beta) {
          return partition_pair(values, beta);
        });
  m.def("ground_energy", &ground_energy);
  m.def("gauge_energy", &gauge_energy);

  m.def("bloch_h_pi", &bloch_h_pi);
  m.def("pi_band_minus", &pi_band_minus);
  m.def("pi_ground_energy", &pi_ground_energy);
  m.def("pi_partition", &pi_partition);
  m.def("chess_bands", &chess_bands);
  m.def("chess_partition", &chess_partition);
  m.def("monopole_mass",
        [](double beta, int L, double t, const std::string& parity) {
          return monopole_mass(beta, L, t, parity_of(parity));
        },
        py::arg("beta"), py::arg("L"), py::arg("t"),
        py::arg("parity") = "even");
  m.def("monopole_mass_infinity", &monopole_mass_infinity);
  m.def("degeneracy_gap", &degeneracy_gap);

  m.def("rp_check",
        [](const GaugeConfig& cfg, const std::string& orientation,
           int position, double beta, double t, const std::string& parity) {
          const ReflectionCut cut{orientation == "horizontal"
                                      ? CutOrientation::horizontal
                                      : CutOrientation::vertical,
                                  position};
          return rp_check(cfg, cut, beta, t, parity_of(parity));
        },
        py::arg("config"), py::arg("orientation"), py::arg("position"),
        py::arg("beta"), py::arg("t"), py::arg("parity") = "even");
  m.def("chessboard_check",
        [](const FluxSector& s, double beta, double t,
           const std::string& parity) {
          return chessboard_check(s, beta, t, parity_of(parity));
        },
        py::arg("sector"), py::arg("beta"), py::arg("t"),
        py::arg("parity") = "even");
  m.def("monopole_bound_check",
        [](const FluxSector& s, double beta, double t,
           const std::string& parity) {
          return monopole_bound_check(s, s.a, s.b, beta, t, parity_of(parity));
        },
        py::arg("sector"), py::arg("beta"), py::arg("t"),
        py::arg("parity") = "even");

  m.def("ward_check", [](int L, double beta, double t, int m_index) {
    const WardReport r = ward_check(L, beta, t, m_index);
    return py::make_tuple(r.diamagnetic, r.kubo, r.residual, r.passed);
  });
  m.def("susceptibility_lattice",
        [](int m_index, int L, double beta, double t, double q) {
          return susceptibility_lattice(m_index, L, beta, t, q);
        },
        py::arg("m"), py::arg("L"), py::arg("beta"), py::arg("t") = 1.0,
        py::arg("q") = 1.0);
  m.def("susceptibility_continuum", &susceptibility_continuum, py::arg("p2"),
        py::arg("delta"), py::arg("t") = 1.0, py::arg("q") = 1.0);
  m.def("dirac_velocity", [](double t) { return dirac_velocity(t); });

  m.def("ground_state_propagator",
        [](int x1, int x2, double tau, double t) {
          return Eigen::Matrix2cd(ground_state_propagator(x1, x2, tau, t,
                                                          Side::minus));
        },
        py::arg("x1"), py::arg("x2"), py::arg("tau"), py::arg("t") = 1.0);
  m.def("density_correlation", &density_correlation, py::arg("x1"),
        py::arg("x2"), py::arg("tau"), py::arg("t") = 1.0, py::arg("i") = 0,
        py::arg("j") = 0);

  m.def("full_partition_summary", [](double beta, double t) {
    static const SectorTable table = SectorTable::build(4);
    const GibbsSummary g = full_partition(table, beta, t);
    py::dict d;
    d["log_z"] = g.log_z;
    d["f"] = g.f;
    d["f_pi"] = g.f_pi;
    d["bound_rhs"] = g.bound_rhs;
    d["sandwich_ok"] = g.sandwich_ok;
    d["sandwich_lhs"] = g.observables.at("sandwich_lhs");
    d["plaquette_expectation"] = g.observables.at("plaquette_expectation");
    return d;
  });
}
