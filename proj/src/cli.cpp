#include "prymlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "prymlab/errors.hpp"
#include "prymlab/surface.hpp"

namespace prymlab::cli {

using json = nlohmann::ordered_json;
using weyl::OrbitKind;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json type_json(const lattice::PolType& t) { return t.chain; }

json datum_json(const cover::MonodromyDatum& d) { return json::parse(cover::datum_to_json(d)); }

json result_json(const prym::PrymResult& r) {
  json types = json::array();
  for (const auto& t : r.types) {
    json o{{"name", t.name}, {"dim", t.dim}, {"computed", type_json(t.computed)}};
    o["predicted"] = t.predicted ? type_json(*t.predicted) : json(nullptr);
    o["match"] = t.matches();
    if (!t.note.empty()) o["note"] = t.note;
    types.push_back(std::move(o));
  }
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json o{{"scenario", r.scenario}, {"n", r.n}, {"ds", r.ds}, {"dl", r.dl}, {"datum", datum_json(r.datum)},
         {"types", types}};
  o["mu_surjective"] = r.mu_surjective ? json(*r.mu_surjective) : json(nullptr);
  o["scaling_verified"] = r.scaling_verified ? json(*r.scaling_verified) : json(nullptr);
  o["checks"] = checks;
  o["notes"] = r.notes;
  o["verdict"] = r.verdict ? "pass" : "fail";
  return o;
}

json identity_json(const corr::IdentityResult& r) {
  json scalars = json::object();
  for (const auto& [k, v] : r.scalars) scalars[k] = int_json(v);
  json o{{"identity", r.name}, {"letter", std::string(1, r.letter)}, {"n", r.n}, {"level", r.level},
         {"pass", r.pass}, {"scalars", scalars}};
  if (!r.pass) {
    o["failed"] = r.failed;
    if (r.lhs) o["lhs"] = matrix_json(*r.lhs);
    if (r.rhs) o["rhs"] = matrix_json(*r.rhs);
  }
  return o;
}

json prediction_json(const cover::Prediction& p) {
  json types = json::array();
  for (const auto& t : p.types) {
    json parts = json::array();
    for (const auto& [m, c] : t.parts) parts.push_back({m, c});
    json o{{"name", t.name}, {"in_regime", t.in_regime}, {"parts", parts}};
    o["type"] = t.in_regime ? type_json(t.chain()) : json(nullptr);
    if (!t.note.empty()) o["note"] = t.note;
    types.push_back(std::move(o));
  }
  json o{{"n", p.n},
         {"ds", p.ds},
         {"dl", p.dl},
         {"gy", p.gy},
         {"genus", {{"C'", p.g_c_prime}, {"C", p.g_c}, {"X", p.g_x}}},
         {"dim", {{"P(C,C')", p.dim_p_c}, {"P(X,delta)", p.dim_p_x_delta}, {"P(X,X')", p.dim_p_x_xprime},
                  {"P(Ytilde,Y)", p.dim_p_ytilde}}},
         {"types", types}};
  if (p.gy > 0) o["note"] = "positive base genus: formulas only, the homology engine works over P^1";
  return o;
}

json probe_json(const prym::ProbeRow& r) {
  json o{{"trial", r.trial},
         {"seed", r.seed},
         {"datum", datum_json(r.datum)},
         {"computed", type_json(r.computed)},
         {"conjectured", type_json(r.conjectured)},
         {"known_regime", r.known_regime},
         {"agree", r.agree}};
  o["mu_surjective"] = r.mu_surjective ? json(*r.mu_surjective) : json(nullptr);
  o["scaling"] = r.scaling ? json(*r.scaling) : json(nullptr);
  return o;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

cover::MonodromyDatum load(const std::string& path) {
  try {
    return cover::parse_datum(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Counts {
  long long ds = 0, dl = 0, other = 0;
};

Counts count(const cover::MonodromyDatum& d) {
  Counts c;
  for (const auto& g : d.gens) {
    auto k = weyl::reflection_kind(g);
    if (!k) ++c.other;
    else if (*k == weyl::RootKind::Short) ++c.ds;
    else ++c.dl;
  }
  return c;
}

std::string render_matrix(const IntMatrix& m, const std::string& indent) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += indent;
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m(i, j).get_str();
    s += "\n";
  }
  return s;
}

void print_result(std::ostream& out, const prym::PrymResult& r) {
  out << "scenario " << r.scenario << "  n=" << r.n << " |Ds|=" << r.ds << " |Dl|=" << r.dl << "\n";
  for (const auto& t : r.types) {
    out << "  " << t.name << ": dim " << t.dim << ", type " << t.computed.to_string();
    if (t.predicted) out << ", predicted " << t.predicted->to_string() << (t.matches() ? "  ok" : "  MISMATCH");
    if (!t.note.empty()) out << "  (" << t.note << ")";
    out << "\n";
  }
  if (r.mu_surjective)
    out << "  mu surjective: " << yes_no(*r.mu_surjective) << ", scaling: " << yes_no(r.scaling_verified.value_or(false))
        << "\n";
  else
    out << "  mu check: not applicable (spinor cover disconnected)\n";
  for (const auto& c : r.checks)
    out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  out << "  note: lattice checks run over P^1 only; positive base genus is covered by predict\n";
  out << "verdict: " << (r.verdict ? "pass" : "fail") << "\n";
}

void print_identity(std::ostream& out, const corr::IdentityResult& r) {
  out << "identity " << r.name << " (" << r.letter << ") n=" << r.n << " level=" << r.level << ": "
      << (r.pass ? "pass" : "FAIL") << "\n";
  for (const auto& [k, v] : r.scalars) out << "  " << k << " = " << v.get_str() << "\n";
  if (!r.pass) {
    out << "  failed: " << r.failed << "\n";
    if (r.lhs) out << "  lhs:\n" << render_matrix(*r.lhs, "    ");
    if (r.rhs) out << "  rhs:\n" << render_matrix(*r.rhs, "    ");
  }
}

void print_prediction(std::ostream& out, const cover::Prediction& p) {
  out << "n=" << p.n << " |Ds|=" << p.ds << " |Dl|=" << p.dl << " g(Y)=" << p.gy << "\n";
  out << "  g(C')=" << p.g_c_prime << " g(C)=" << p.g_c << " g(X)=" << p.g_x << "\n";
  out << "  dim P(C,C')=" << p.dim_p_c << " dim P(X,delta)=" << p.dim_p_x_delta << " dim P(X,X')=" << p.dim_p_x_xprime
      << " dim P(Ytilde,Y)=" << p.dim_p_ytilde << "\n";
  for (const auto& t : p.types) {
    out << "  " << t.name << ": ";
    if (t.in_regime) out << t.chain().to_string();
    else out << "no prediction";
    if (!t.note.empty()) out << "  (" << t.note << ")";
    out << "\n";
  }
  if (p.gy > 0) out << "  note: positive base genus, formulas only; the homology engine works over P^1\n";
}

// -------------------------------------------------------------- commands

struct Options {
  std::string format = "text";
  std::string file, orbit = "spinor", scenario, identity, gen;
  int n = 0;
  long long ds = -1, dl = -1, gy = 0;
  std::uint64_t seed = 1;
  std::size_t trials = 5;
  bool dump = false;
};

bool as_json(const Options& o) { return o.format == "json"; }

int cmd_validate(const Options& o, std::ostream& out) {
  auto d = load(o.file);
  if (auto v = cover::validate(d)) {
    throw InputError(o.file + ": " + v->message);
  }
  const auto c = count(d);
  if (as_json(o))
    out << json{{"valid", true}, {"n", d.n}, {"base_genus", d.base_genus}, {"branch_points", d.gens.size()},
                {"ds", c.ds}, {"dl", c.dl}, {"other", c.other}}
               .dump()
        << "\n";
  else
    out << "valid: n=" << d.n << " base genus " << d.base_genus << ", " << d.gens.size() << " branch points (" << c.ds
        << " short, " << c.dl << " long, " << c.other << " other)\n";
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  auto d = load(o.file);
  cover::require_valid(d);
  std::vector<weyl::SignedPerm> gens = d.gens;
  for (const auto& h : d.handles) {
    gens.push_back(h.alpha);
    gens.push_back(h.beta);
  }
  auto info = weyl::classify_subgroup(gens);
  const auto c = count(d);
  const bool simple = c.other == 0;
  if (as_json(o))
    out << json{{"group", weyl::to_string(info.tag)}, {"order", info.order}, {"transitive", info.transitive},
                {"simple", simple}, {"ds", c.ds}, {"dl", c.dl}}
               .dump()
        << "\n";
  else
    out << "monodromy group: " << weyl::to_string(info.tag) << ", order " << info.order
        << (info.transitive ? ", transitive" : ", intransitive") << "\n"
        << "simple: " << yes_no(simple) << " (" << c.ds << " short, " << c.dl << " long reflections)\n";
  return kOk;
}

int cmd_genera(const Options& o, std::ostream& out) {
  auto d = load(o.file);
  cover::require_valid(d);
  json rows = json::array();
  std::ostringstream text;
  for (auto kind : {OrbitKind::Vector, OrbitKind::PairClass, OrbitKind::Spinor, OrbitKind::SpinorClass,
                    OrbitKind::Parity}) {
    auto cov = cover::induce(d, kind);
    auto gs = cover::component_genera(cov);
    rows.push_back({{"orbit", weyl::to_string(kind)}, {"degree", cov.degree()}, {"components", gs.size()},
                    {"genera", gs}});
    text << "  " << weyl::to_string(kind) << ": degree " << cov.degree() << ", genus";
    for (std::size_t i = 0; i < gs.size(); ++i) text << (i ? " + " : " ") << gs[i];
    text << "\n";
  }
  const auto c = count(d);
  json o_json{{"n", d.n}, {"base_genus", d.base_genus}, {"covers", rows}};
  if (c.other == 0) {
    auto p = cover::predict(d.n, c.ds, c.dl, d.base_genus);
    o_json["predicted"] = {{"C'", p.g_c_prime}, {"C", p.g_c}, {"X", p.g_x}};
    text << "  predicted: g(C')=" << p.g_c_prime << " g(C)=" << p.g_c << " g(X)=" << p.g_x << "\n";
  }
  if (as_json(o)) out << o_json.dump() << "\n";
  else out << "n=" << d.n << " base genus " << d.base_genus << "\n" << text.str();
  return kOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
  if (o.n <= 0 || o.ds < 0 || o.dl < 0) throw InputError("predict needs --n, --ds and --dl");
  auto p = cover::predict(o.n, o.ds, o.dl, o.gy);
  if (as_json(o)) out << prediction_json(p).dump() << "\n";
  else print_prediction(out, p);
  return kOk;
}

int cmd_homology(const Options& o, std::ostream& out) {
  auto d = load(o.file);
  cover::require_valid(d);
  auto kind = weyl::parse_orbit_kind(o.orbit);
  auto m = surface::build_disjoint(cover::induce(d, kind));
  const bool principal = m.rank() == 0 || abs(lattice::determinant(m.gram())) == 1;
  if (as_json(o)) {
    json j{{"orbit", o.orbit}, {"degree", m.degree()}, {"components", m.component_count()}, {"rank", m.rank()},
           {"principal", principal}};
    if (o.dump) j["gram"] = matrix_json(m.gram());
    out << j.dump() << "\n";
  } else {
    out << o.orbit << " cover: degree " << m.degree() << ", " << m.component_count() << " component(s), H1 rank "
        << m.rank() << ", intersection form " << (principal ? "unimodular" : "NOT unimodular") << "\n";
    if (o.dump) out << render_matrix(m.gram(), "  ");
  }
  return principal ? kOk : kFail;
}

int cmd_ptype(const Options& o, std::ostream& out) {
  auto d = load(o.file);
  cover::require_valid(d);
  if (d.base_genus != 0) throw UnsupportedError("ptype needs a genus-0 base; use predict for positive genus");
  auto kind = weyl::parse_orbit_kind(o.orbit);
  corr::HomologyEvaluator ev(d);
  const auto& m = ev.model(kind);
  std::string name;
  lattice::PolarizedLattice p;
  switch (kind) {
    case OrbitKind::Vector:
      name = "P(C,C')";
      p = prym::prym_lattice(m, corr::minus_identity(d.n, kind));
      break;
    case OrbitKind::Spinor:
      name = "P(X,delta)";
      p = prym::prym_tyurin_lattice(m).lattice;
      break;
    case OrbitKind::Parity:
      name = "P(Ytilde,Y)";
      p = prym::prym_lattice(
          m, corr::FiberMatrix::make(d.n, kind, kind, IntMatrix{{0, 1}, {1, 0}}));
      break;
    default:
      name = "J(" + o.orbit + ")";
      p = {m.gram(), IntMatrix::identity(m.rank())};
  }
  lattice::PolType t;
  if (p.rank() > 0) t = lattice::ptype(p);
  if (as_json(o))
    out << json{{"orbit", o.orbit}, {"name", name}, {"dim", p.rank() / 2}, {"type", type_json(t)}}.dump() << "\n";
  else
    out << name << ": dim " << p.rank() / 2 << ", type " << t.to_string() << "\n";
  return kOk;
}

std::pair<long long, long long> parse_gen(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError("--gen expects DS,DL");
  try {
    return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InputError("--gen expects DS,DL");
  }
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.scenario.empty() == o.identity.empty()) throw InputError("verify needs exactly one of --scenario, --identity");
  if (!o.file.empty() && !o.gen.empty()) throw InputError("give either --file or --gen, not both");
  if (!o.identity.empty()) {
    if (o.identity == "list") {
      for (const auto& i : corr::identity_catalog())
        out << i.name << " (" << i.letter << "), n in [" << i.min_n << ", " << i.max_n << "]"
            << (i.odd_only ? " odd" : "") << ": " << i.summary << "\n";
      return kOk;
    }
    corr::IdentityResult r;
    if (!o.file.empty()) {
      auto d = load(o.file);
      if (o.n > 0 && o.n != d.n) throw InputError("--n disagrees with the datum rank");
      corr::HomologyEvaluator ev(d);
      r = corr::check_identity(o.identity, d.n, ev);
    } else {
      if (o.n <= 0) throw InputError("verify --identity needs --n or --file");
      r = corr::check_identity(o.identity, o.n);
    }
    if (as_json(o)) out << identity_json(r).dump() << "\n";
    else print_identity(out, r);
    return r.pass ? kOk : kFail;
  }
  if (o.scenario == "list") {
    for (const auto& s : prym::scenario_catalog())
      out << s.name << ": " << s.summary << " (n in [" << s.min_n << ", " << s.max_n << "], default |Ds|="
          << s.default_ds << " |Dl|=" << s.default_dl << ")\n";
    return kOk;
  }
  prym::PrymResult r;
  if (!o.file.empty()) {
    r = prym::verify_scenario(o.scenario, load(o.file));
  } else {
    long long ds = o.ds, dl = o.dl;
    if (!o.gen.empty()) std::tie(ds, dl) = parse_gen(o.gen);
    r = prym::verify_scenario(o.scenario, o.n, ds, dl, o.seed);
  }
  if (as_json(o)) out << result_json(r).dump() << "\n";
  else print_result(out, r);
  return r.verdict ? kOk : kFail;
}

int cmd_probe(const Options& o, std::ostream& out) {
  if (o.ds < 0 || o.dl < 0) throw InputError("probe needs --ds and --dl");
  const int n = o.n > 0 ? o.n : 4;
  auto rep = prym::conjecture_probe(n, o.ds, o.dl, o.trials, o.seed, worker_count(),
                                    [&](const prym::ProbeRow& r) { out << probe_json(r).dump() << "\n" << std::flush; });
  std::ostringstream pct;
  pct.setf(std::ios::fixed);
  pct.precision(1);
  pct << rep.agreement_percent();
  if (as_json(o))
    out << json{{"summary", true}, {"n", n}, {"ds", o.ds}, {"dl", o.dl}, {"trials", rep.rows.size()},
                {"agreements", rep.agreements}, {"agreement_percent", pct.str()}}
               .dump()
        << "\n";
  else
    out << "agreement with the conjectured type: " << rep.agreements << "/" << rep.rows.size() << " (" << pct.str()
        << "%), reported only\n";
  return kOk;
}

}  // namespace

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PRYMLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return std::min<unsigned>(static_cast<unsigned>(v), hw);
  }
  return hw;
}

std::string to_json(const prym::PrymResult& r) { return result_json(r).dump(); }
std::string to_json(const corr::IdentityResult& r) { return identity_json(r).dump(); }
std::string to_json(const cover::Prediction& p) { return prediction_json(p).dump(); }
std::string to_json(const prym::ProbeRow& row) { return probe_json(row).dump(); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prym and Prym-Tyurin lattices of Weyl group coverings of P^1", "prymlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto file_arg = [&](CLI::App* c) { c->add_option("file", o.file, "Monodromy datum (JSON)")->required(); };
  auto orbit_opt = [&](CLI::App* c) {
    c->add_option("--orbit", o.orbit, "Orbit: vector, spinor, pair, parity, spinor_class")
        ->check(CLI::IsMember({"vector", "spinor", "pair", "parity", "spinor_class"}));
  };
  auto* validate = app.add_subcommand("validate", "Check a datum");
  file_arg(validate);
  auto* classify = app.add_subcommand("classify", "Monodromy group of a datum");
  file_arg(classify);
  auto* genera = app.add_subcommand("genera", "Genera of the induced covers");
  file_arg(genera);
  auto* predict = app.add_subcommand("predict", "Closed-form genera, dimensions and types");
  predict->add_option("--n", o.n)->required();
  predict->add_option("--ds", o.ds)->required();
  predict->add_option("--dl", o.dl)->required();
  predict->add_option("--gy", o.gy);
  auto* homology = app.add_subcommand("homology", "H1 of an induced cover");
  file_arg(homology);
  orbit_opt(homology);
  homology->add_flag("--dump", o.dump, "Print the intersection matrix");
  auto* ptype = app.add_subcommand("ptype", "Polarization type attached to an orbit");
  file_arg(ptype);
  orbit_opt(ptype);
  auto* verify = app.add_subcommand("verify", "Run a scenario or an identity check");
  verify->add_option("--scenario", o.scenario, "Scenario name or 'list'");
  verify->add_option("--identity", o.identity, "Identity name, letter or 'list'");
  verify->add_option("--file", o.file, "Datum file");
  verify->add_option("--gen", o.gen, "Generate a datum with DS,DL reflections");
  verify->add_option("--n", o.n);
  verify->add_option("--ds", o.ds);
  verify->add_option("--dl", o.dl);
  verify->add_option("--seed", o.seed);
  auto* probe = app.add_subcommand("probe", "Compare P(X,delta) with the conjectured type on random data");
  probe->add_option("--n", o.n);
  probe->add_option("--ds", o.ds)->required();
  probe->add_option("--dl", o.dl)->required();
  probe->add_option("--trials", o.trials);
  probe->add_option("--seed", o.seed);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (classify->parsed()) return cmd_classify(o, out);
    if (genera->parsed()) return cmd_genera(o, out);
    if (predict->parsed()) return cmd_predict(o, out);
    if (homology->parsed()) return cmd_homology(o, out);
    if (ptype->parsed()) return cmd_ptype(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (probe->parsed()) return cmd_probe(o, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace prymlab::cli
