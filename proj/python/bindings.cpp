#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "prymlab/cli.hpp"
#include "prymlab/corr.hpp"
#include "prymlab/cover.hpp"
#include "prymlab/errors.hpp"
#include "prymlab/prym.hpp"
#include "prymlab/surface.hpp"

namespace py = pybind11;
using namespace prymlab;

namespace {

std::vector<std::vector<long long>> rows(const IntMatrix& m) { return m.to_rows(); }

std::string classify(const std::string& datum_json) {
  auto d = cover::parse_datum(datum_json);
  cover::require_valid(d);
  auto info = weyl::classify_subgroup(d.gens);
  return weyl::to_string(info.tag);
}

py::dict homology(const std::string& datum_json, const std::string& orbit) {
  auto d = cover::parse_datum(datum_json);
  cover::require_valid(d);
  auto m = surface::build_disjoint(cover::induce(d, weyl::parse_orbit_kind(orbit)));
  py::dict out;
  out["degree"] = m.degree();
  out["components"] = m.component_count();
  out["rank"] = m.rank();
  out["gram"] = rows(m.gram());
  return out;
}

std::vector<long long> prym_tyurin_type(const std::string& datum_json) {
  auto d = cover::parse_datum(datum_json);
  corr::HomologyEvaluator ev(d);
  auto p = prym::prym_tyurin_lattice(ev.model(weyl::OrbitKind::Spinor)).lattice;
  return p.rank() ? lattice::ptype(p).chain : std::vector<long long>{};
}

std::vector<long long> prym_type(const std::string& datum_json) {
  auto d = cover::parse_datum(datum_json);
  corr::HomologyEvaluator ev(d);
  auto p = prym::prym_lattice(ev.model(weyl::OrbitKind::Vector), corr::minus_identity(d.n, weyl::OrbitKind::Vector));
  return p.rank() ? lattice::ptype(p).chain : std::vector<long long>{};
}

std::vector<std::string> probe(int n, long long ds, long long dl, std::size_t trials, std::uint64_t seed) {
  std::vector<std::string> out;
  py::gil_scoped_release release;
  auto rep = prym::conjecture_probe(n, ds, dl, trials, seed, cli::worker_count());
  for (const auto& r : rep.rows) out.push_back(cli::to_json(r));
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prym and Prym-Tyurin lattices of Weyl group coverings of P^1";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<GenerationFailure>(m, "GenerationFailure", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def("random_simple",
        [](int n, int ds, int dl, std::uint64_t seed) { return cover::datum_to_json(cover::random_simple(n, ds, dl, seed)); },
        py::arg("n"), py::arg("ds"), py::arg("dl"), py::arg("seed") = 1);
  m.def("validate", [](const std::string& datum_json) -> std::optional<std::string> {
    auto v = cover::validate(cover::parse_datum(datum_json));
    if (v) return v->message;
    return std::nullopt;
  });
  m.def("classify", &classify);
  m.def("genera", [](const std::string& datum_json, const std::string& orbit) {
    auto d = cover::parse_datum(datum_json);
    cover::require_valid(d);
    return cover::component_genera(cover::induce(d, weyl::parse_orbit_kind(orbit)));
  });
  m.def("predict", [](int n, long long ds, long long dl, long long gy) { return cli::to_json(cover::predict(n, ds, dl, gy)); },
        py::arg("n"), py::arg("ds"), py::arg("dl"), py::arg("gy") = 0);
  m.def("homology", &homology, py::arg("datum"), py::arg("orbit") = "spinor");
  m.def("prym_type", &prym_type);
  m.def("prym_tyurin_type", &prym_tyurin_type);
  m.def("check_identity", [](const std::string& name, int n) { return cli::to_json(corr::check_identity(name, n)); });
  m.def("identity_names", [] {
    std::vector<std::string> v;
    for (const auto& i : corr::identity_catalog()) v.push_back(i.name);
    return v;
  });
  m.def("scenario_names", [] {
    std::vector<std::string> v;
    for (const auto& s : prym::scenario_catalog()) v.push_back(s.name);
    return v;
  });
  m.def("verify_scenario",
        [](const std::string& name, int n, long long ds, long long dl, std::uint64_t seed) {
          return cli::to_json(prym::verify_scenario(name, n, ds, dl, seed));
        },
        py::arg("name"), py::arg("n") = 0, py::arg("ds") = -1, py::arg("dl") = -1, py::arg("seed") = 1);
  m.def("verify_scenario_datum", [](const std::string& name, const std::string& datum_json) {
    return cli::to_json(prym::verify_scenario(name, cover::parse_datum(datum_json)));
  });
  m.def("probe", &probe, py::arg("n"), py::arg("ds"), py::arg("dl"), py::arg("trials") = 5, py::arg("seed") = 1);
  m.def("run_cli", &run_cli);
}
