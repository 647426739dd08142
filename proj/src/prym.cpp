#include "prymlab/prym.hpp"

#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>

#include "prymlab/errors.hpp"

namespace prymlab::prym {

using corr::FiberMatrix;
using lattice::PolarizedLattice;
using lattice::PolType;
using weyl::OrbitKind;

namespace {

IntMatrix saturated_image(const IntMatrix& m) {
  if (m.cols() == 0) return IntMatrix(m.rows(), 0);
  return lattice::saturate(lattice::image(m));
}

PolType type_of(const PolarizedLattice& p) {
  if (p.rank() == 0) return {};
  return lattice::ptype(p);
}

long long dim_of(const PolarizedLattice& p) { return static_cast<long long>(p.rank() / 2); }

bool is_involutive_permutation(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 1) ++ones;
      else if (m(i, j) != 0) return false;
    }
    if (ones != 1) return false;
  }
  return m * m == IntMatrix::identity(m.rows());
}

FiberMatrix parity_swap(int n) {
  return FiberMatrix::make(n, OrbitKind::Parity, OrbitKind::Parity, IntMatrix{{0, 1}, {1, 0}});
}

// arithmetic genus of a possibly disconnected curve
long long arithmetic_genus(const surface::HomologyModel& m) {
  return static_cast<long long>(m.rank() / 2) - static_cast<long long>(m.component_count()) + 1;
}

}  // namespace

PolarizedLattice prym_lattice(const surface::HomologyModel& model, const FiberMatrix& involution) {
  const auto& cov = model.cover();
  if (involution.n != cov.datum.n || involution.src != cov.orbit || involution.dst != cov.orbit)
    throw DomainError("involution does not act on the fibers of this cover");
  if (!is_involutive_permutation(involution.entries)) throw DomainError("fiber matrix is not an involution");
  const IntMatrix iota = surface::induced_map(model, model, involution.entries);
  return {model.gram(), saturated_image(IntMatrix::identity(model.rank()) - iota)};
}

PrymTyurin prym_tyurin_lattice(const surface::HomologyModel& spinor) {
  const auto& cov = spinor.cover();
  if (cov.orbit != OrbitKind::Spinor) throw DomainError("Prym-Tyurin lattice needs the spinor cover");
  const int n = cov.datum.n;
  PrymTyurin out;
  out.q = 1LL << (n - 1);
  out.delta = surface::induced_map(spinor, spinor, corr::make_D(n).entries);
  const IntMatrix E = IntMatrix::identity(spinor.rank());
  if (!((out.delta - E) * (out.delta + (out.q - 1) * E)).is_zero())
    throw InternalError("(delta - 1)(delta + q - 1) != 0 on H1(X)");
  out.lattice = {spinor.gram(), saturated_image(E - out.delta)};
  return out;
}

MuCheck mu_check(const surface::HomologyModel& spinor, const surface::HomologyModel& vector) {
  if (spinor.cover().orbit != OrbitKind::Spinor || vector.cover().orbit != OrbitKind::Vector)
    throw DomainError("mu_check takes the spinor and the vector cover");
  if (spinor.component_count() != 1 || vector.component_count() != 1)
    throw DomainError("mu_check needs connected covers");
  const int n = spinor.cover().datum.n;
  auto fam = corr::make_S_family(n);
  const IntMatrix s0 = surface::induced_map(spinor, vector, fam.S0.entries);
  const IntMatrix t0 = surface::induced_map(vector, spinor, fam.S0.transposed().entries);
  const auto p = prym_lattice(vector, corr::minus_identity(n, OrbitKind::Vector));

  MuCheck out;
  if (p.rank() == 0) {
    out.surjective = true;
  } else if (auto coords = lattice::solve(p.basis, s0)) {
    auto s = lattice::snf(*coords);
    out.surjective = s.rank == p.rank();
    for (const auto& d : s.divisors) out.surjective = out.surjective && d == 1;
  }
  const IntMatrix pulled = t0 * p.basis;
  out.scaling = pulled.transpose() * spinor.gram() * pulled == Int(1L << (n - 1)) * p.restricted_gram();
  return out;
}

IsometryCertificate certify_isometry(const IntMatrix& map, const PolarizedLattice& src_sub,
                                     const PolarizedLattice& dst_sub, long long factor) {
  IsometryCertificate c;
  const IntMatrix img = map * src_sub.basis;
  if (auto coords = lattice::solve(dst_sub.basis, img); coords && coords->rows() == coords->cols())
    c.bijective = abs(lattice::determinant(*coords)) == 1;
  c.scales = img.transpose() * dst_sub.gram * img == Int(static_cast<long>(factor)) * src_sub.restricted_gram();
  return c;
}

const TypeRecord* PrymResult::type(const std::string& name) const {
  for (const auto& t : types)
    if (t.name == name) return &t;
  return nullptr;
}

const CheckRecord* PrymResult::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double ProbeReport::agreement_percent() const {
  return rows.empty() ? 0.0 : 100.0 * static_cast<double>(agreements) / static_cast<double>(rows.size());
}

// ---------------------------------------------------------------- scenarios

namespace {

struct Context {
  explicit Context(const cover::MonodromyDatum& d) : datum(d), ev(d) {}

  cover::MonodromyDatum datum;
  int n = 0;
  long long ds = 0, dl = 0;
  corr::HomologyEvaluator ev;
  cover::Prediction pred;
  PrymResult res;

  const surface::HomologyModel& model(OrbitKind k) const { return ev.model(k); }

  void check(std::string name, bool pass, std::string detail = {}) {
    res.checks.push_back({std::move(name), pass, std::move(detail)});
  }

  void type(std::string name, const PolarizedLattice& p, std::optional<PolType> predicted, std::string note = {}) {
    res.types.push_back({std::move(name), dim_of(p), type_of(p), std::move(predicted), std::move(note)});
  }

  std::optional<PolType> predicted(std::size_t i) const {
    const auto& t = pred.types.at(i);
    if (!t.in_regime || !t.note.empty()) return std::nullopt;
    return t.chain();
  }
};

void require(bool ok, const std::string& scenario, const std::string& what) {
  if (!ok) throw InputError(scenario + ": " + what);
}

void count_reflections(Context& c) {
  for (std::size_t i = 0; i < c.datum.gens.size(); ++i) {
    auto kind = weyl::reflection_kind(c.datum.gens[i]);
    require(kind.has_value(), c.res.scenario, "datum is not simple, generator " + std::to_string(i + 1) +
                                                  " is not a reflection");
    (*kind == weyl::RootKind::Short ? c.ds : c.dl) += 1;
  }
}

void add_genera(Context& c) {
  auto g = [&](OrbitKind k) { return arithmetic_genus(c.model(k)); };
  auto fmt = [](long long got, long long want) {
    return "computed " + std::to_string(got) + ", formula " + std::to_string(want);
  };
  const long long gc = g(OrbitKind::Vector), gcp = g(OrbitKind::PairClass), gx = g(OrbitKind::Spinor);
  c.check("genus C", gc == c.pred.g_c, fmt(gc, c.pred.g_c));
  c.check("genus C'", gcp == c.pred.g_c_prime, fmt(gcp, c.pred.g_c_prime));
  c.check("genus X", gx == c.pred.g_x, fmt(gx, c.pred.g_x));
}

PolarizedLattice add_pcc(Context& c) {
  auto p = prym_lattice(c.model(OrbitKind::Vector), corr::minus_identity(c.n, OrbitKind::Vector));
  c.type("P(C,C')", p, c.predicted(0));
  return p;
}

PrymTyurin add_pxd(Context& c, bool with_prediction) {
  auto pt = prym_tyurin_lattice(c.model(OrbitKind::Spinor));
  std::optional<PolType> want;
  std::string note;
  if (with_prediction) want = c.predicted(1);
  else if (c.pred.types.at(1).in_regime && !c.pred.types[1].note.empty())
    note = "prediction " + c.pred.types[1].chain().to_string() + " is " + c.pred.types[1].note;
  c.type("P(X,delta)", pt.lattice, want, note);
  c.check("quadratic relation", true, "(delta - 1)(delta + " + std::to_string(pt.q - 1) + ") = 0 on H1(X)");
  return pt;
}

void add_pyy(Context& c) {
  auto p = prym_lattice(c.model(OrbitKind::Parity), parity_swap(c.n));
  c.type("P(Ytilde,Y)", p, c.predicted(2));
}

void add_dimension_check(Context& c, const PolarizedLattice& pxd, const PolarizedLattice& pcc) {
  c.check("dim P(X,delta) = dim P(C,C')", pxd.rank() == pcc.rank(),
          std::to_string(dim_of(pxd)) + " vs " + std::to_string(dim_of(pcc)));
}

// ᵗs0 s0 is multiplication by q on the Prym-Tyurin lattice
void add_s0_check(Context& c, const PrymTyurin& pt) {
  auto fam = corr::make_S_family(c.n);
  const IntMatrix m = c.ev.op(fam.S0.transposed()) * c.ev.op(fam.S0);
  const IntMatrix& b = pt.lattice.basis;
  c.check("tS0 S0 = q on P(X,delta)", m * b == Int(static_cast<long>(pt.q)) * b);
}

void add_mu(Context& c, const PolarizedLattice& pxd, const PolarizedLattice& pcc) {
  auto mu = mu_check(c.model(OrbitKind::Spinor), c.model(OrbitKind::Vector));
  c.res.mu_surjective = mu.surjective;
  c.res.scaling_verified = mu.scaling;
  if (!(mu.surjective && mu.scaling) || pcc.rank() == 0) return;
  const PolType tp = type_of(pcc), tx = type_of(pxd);
  const long long q = 1LL << (c.n - 1);
  const long long denom = tp.chain.front() * tp.chain.back();
  bool ok = false;
  std::string detail;
  try {
    auto want = lattice::scale_type(lattice::dual_type(tp), q, denom);
    ok = want == tx;
    detail = "expected " + want.to_string() + ", computed " + tx.to_string();
  } catch (const DomainError& e) {
    detail = e.what();
  }
  c.check("type(P) = q/(d1 dp) dual(type P')", ok, detail);
}

void finish(Context& c) {
  auto& r = c.res;
  r.verdict = true;
  for (const auto& t : r.types) r.verdict = r.verdict && t.matches();
  for (const auto& k : r.checks) r.verdict = r.verdict && k.pass;
  if (r.mu_surjective) r.verdict = r.verdict && *r.mu_surjective;
  if (r.scaling_verified) r.verdict = r.verdict && *r.scaling_verified;
}

// H_1 of the union of the components whose sheets satisfy keep(label)
PolarizedLattice component_lattice(const surface::HomologyModel& m, const std::function<bool(const weyl::OrbitLabel&)>& keep) {
  std::vector<std::size_t> cols;
  const auto& labels = m.cover().labels;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const auto& chain = m.basis()[i];
    std::optional<bool> side;
    for (std::size_t e = 0; e < chain.size(); ++e) {
      if (chain[e] == 0) continue;
      const bool k = keep(labels[e % m.degree()]);
      if (side && *side != k) throw InternalError("basis cycle meets two components");
      side = k;
    }
    if (side.value_or(false)) cols.push_back(i);
  }
  return {m.gram(), IntMatrix::identity(m.rank()).select_columns(cols)};
}

bool even_label(const weyl::OrbitLabel& l) { return std::popcount(static_cast<unsigned>(l.value)) % 2 == 0; }

void pantazis_b2(Context& c) {
  require(c.ds >= 2 && c.dl >= 2, c.res.scenario, "needs both short and long reflections");
  add_genera(c);
  auto pcc = add_pcc(c);
  auto pxx = prym_lattice(c.model(OrbitKind::Spinor), corr::minus_identity(2, OrbitKind::Spinor));
  c.type("P(X,X')", pxx, c.predicted(1));
  auto pt = prym_tyurin_lattice(c.model(OrbitKind::Spinor));
  c.check("P(X,delta) = P(X,X')", lattice::same_lattice(pt.lattice.basis, pxx.basis));
  add_dimension_check(c, pxx, pcc);
  add_mu(c, pxx, pcc);
}

void recillas_a3(Context& c) {
  require(c.ds == 0, c.res.scenario, "needs long reflections only (an S4 transposition datum)");
  require(c.dl >= 6, c.res.scenario, "needs at least 6 branch points");
  const auto& x = c.model(OrbitKind::Spinor);
  require(x.component_count() == 2, c.res.scenario, "the degree-4 cover is disconnected");
  const long long g = c.dl / 2 - 3;
  auto jc = component_lattice(x, even_label);
  c.type("JC", jc, PolType{std::vector<long long>(g, 1)}, "degree-4 cover, even spinor component");
  c.check("genus C", dim_of(jc) == g, std::to_string(dim_of(jc)) + " vs " + std::to_string(g));
  auto pxx = prym_lattice(c.model(OrbitKind::Vector), corr::minus_identity(3, OrbitKind::Vector));
  c.type("P(X,X')", pxx, PolType{std::vector<long long>(g, 2)}, "degree-6 cover over the trigonal X'");
  auto s0 = c.ev.op(corr::make_S_family(3).S0);
  auto cert = certify_isometry(s0, jc, pxx, 2);
  c.check("isometry JC -> (P(X,X'), form/2)", cert.ok(),
          std::string("bijective ") + (cert.bijective ? "yes" : "no") + ", scales by 2 " + (cert.scales ? "yes" : "no"));
}

void theorem2_b3(Context& c) {
  require(c.ds > 0 && c.dl > 0, c.res.scenario, "needs both short and long reflections");
  add_genera(c);
  auto pcc = add_pcc(c);
  auto pt = add_pxd(c, true);
  add_pyy(c);
  add_dimension_check(c, pt.lattice, pcc);
  add_s0_check(c, pt);
  add_mu(c, pt.lattice, pcc);
}

void hyperelliptic_4xi(Context& c) {
  require(c.dl == 4, c.res.scenario, "needs exactly 4 long reflections (C' rational)");
  require(c.ds >= 2, c.res.scenario, "needs short reflections");
  add_genera(c);
  auto pcc = add_pcc(c);
  auto pt = add_pxd(c, true);
  add_dimension_check(c, pt.lattice, pcc);
  add_s0_check(c, pt);
  add_mu(c, pt.lattice, pcc);
  // restricted form is 4 times a unimodular one
  const IntMatrix r = pt.lattice.restricted_gram();
  bool exp4 = true;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) exp4 = exp4 && mpz_divisible_ui_p(r(i, j).get_mpz_t(), 4);
  if (exp4 && r.rows() > 0) {
    IntMatrix h(r.rows(), r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) h(i, j) = r(i, j) / 4;
    exp4 = abs(lattice::determinant(h)) == 1;
  }
  c.check("form on P(X,delta) is 4 Xi, Xi principal", exp4);
  const auto& vc = c.model(OrbitKind::Vector);
  PolarizedLattice jc{vc.gram(), IntMatrix::identity(vc.rank())};
  auto t0 = c.ev.op(corr::make_S_family(3).S0.transposed());
  auto cert = certify_isometry(t0, jc, pt.lattice, 4);
  c.check("isometry JC -> (P(X,delta), form/4)", cert.ok(),
          std::string("bijective ") + (cert.bijective ? "yes" : "no") + ", scales by 4 " + (cert.scales ? "yes" : "no"));
}

void d3_antidiagonal(Context& c) {
  require(c.ds == 0, c.res.scenario, "needs long reflections only (D3 monodromy)");
  const auto& x = c.model(OrbitKind::Spinor);
  require(x.component_count() == 2, c.res.scenario, "spinor cover does not split");
  add_genera(c);
  auto pcc = add_pcc(c);
  auto pt = add_pxd(c, true);
  add_dimension_check(c, pt.lattice, pcc);
  const IntMatrix E = IntMatrix::identity(x.rank());
  const IntMatrix sigma = c.ev.op(corr::minus_identity(3, OrbitKind::Spinor));
  c.check("1 - delta = 2(1 - sigma)", E - pt.delta == 2L * (E - sigma));
  const IntMatrix anti = saturated_image(E - sigma);
  c.check("P(X,delta) = antidiagonal of B x B", lattice::same_lattice(pt.lattice.basis, anti));
  auto b = component_lattice(x, even_label);
  const long long gz = c.dl / 2 - 3;
  c.type("B", b, PolType{std::vector<long long>(gz, 1)}, "B = JZ over P^1");
}

void etale_dn(Context& c) {
  require(c.ds == 0, c.res.scenario, "needs long reflections only (unramified C -> C')");
  const auto& x = c.model(OrbitKind::Spinor);
  c.check("X splits as X0 + X1", x.component_count() == 2, std::to_string(x.component_count()) + " components");
  add_genera(c);
  auto pcc = add_pcc(c);
  auto pt = add_pxd(c, true);
  add_dimension_check(c, pt.lattice, pcc);
}

void b3_complement(Context& c) {
  require(c.ds > 0 && c.dl > 0, c.res.scenario, "needs both short and long reflections");
  add_genera(c);
  auto pcc = add_pcc(c);
  auto pt = add_pxd(c, true);
  add_pyy(c);
  add_dimension_check(c, pt.lattice, pcc);
  const auto& x = c.model(OrbitKind::Spinor);
  auto pxx = prym_lattice(x, corr::minus_identity(3, OrbitKind::Spinor));
  c.type("P(X,X')", pxx, std::nullopt);
  c.check("dim P(X,X')", dim_of(pxx) == c.pred.dim_p_x_xprime,
          std::to_string(dim_of(pxx)) + " vs " + std::to_string(c.pred.dim_p_x_xprime));
  auto proj = corr::projection(3, OrbitKind::Spinor, OrbitKind::Parity);
  const IntMatrix nm = c.ev.op(proj), pull = c.ev.op(proj.transposed());
  const IntMatrix ker = lattice::intersect(pxx.basis, lattice::kernel(nm));
  c.check("P(X,delta) = ker Nm_g on P(X,X')", lattice::same_lattice(pt.lattice.basis, ker));
  auto pyy = prym_lattice(c.model(OrbitKind::Parity), parity_swap(3));
  const IntMatrix E = IntMatrix::identity(x.rank());
  const IntMatrix lhs = saturated_image((pt.delta + 3L * E) * pxx.basis);
  const IntMatrix rhs = saturated_image(pull * pyy.basis);
  c.check("(delta + 3)P(X,X') = g*P(Ytilde,Y)", lattice::same_lattice(lhs, rhs));
}

void b4_structure(Context& c) {
  require(c.ds > 0, c.res.scenario, "needs short reflections (W(B4) monodromy)");
  add_genera(c);
  auto pcc = add_pcc(c);
  auto pt = add_pxd(c, false);
  add_dimension_check(c, pt.lattice, pcc);
  const auto& x = c.model(OrbitKind::Spinor);
  auto pxx = prym_lattice(x, corr::minus_identity(4, OrbitKind::Spinor));
  c.type("P(X,X')", pxx, std::nullopt);
  const IntMatrix E = IntMatrix::identity(x.rank());
  const IntMatrix d0 = c.ev.op(corr::make_Di(4, 0)), d1 = c.ev.op(corr::make_Di(4, 1));
  const IntMatrix sigma = c.ev.op(corr::minus_identity(4, OrbitKind::Spinor));
  const IntMatrix& b = pxx.basis;
  c.check("P(X,delta) = (delta0 + 2)P(X,X')",
          lattice::same_lattice(pt.lattice.basis, saturated_image((d0 + 2L * E) * b)));
  const IntMatrix plus7 = saturated_image((pt.delta + 7L * E) * b);
  const IntMatrix perp = lattice::intersect(b, lattice::kernel(pt.lattice.basis.transpose() * x.gram()));
  c.check("complement of P(X,delta) in P(X,X') = (delta + 7)P(X,X')", lattice::same_lattice(perp, plus7));
  c.check("(delta + 7)P(X,X') = (delta0 - 2)P(X,X')",
          lattice::same_lattice(plus7, saturated_image((d0 - 2L * E) * b)));
  c.check("(delta0 + 2)(delta0 - 2) rho*JX' = delta1 JX",
          lattice::same_lattice(saturated_image((d0 + 2L * E) * (d0 - 2L * E) * (E + sigma)), saturated_image(d1)));
}

using Runner = void (*)(Context&);

struct Scenario {
  ScenarioInfo info;
  Runner run;
};

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> table = {
      {{"pantazis_b2", "B2: types of P(C,C') and P(X,X'), mu isomorphism", 2, 2, 2, 4, 4}, pantazis_b2},
      {{"recillas_a3", "S4 tetragonal cover: JC isometric to (P(X,X'), form/2)", 3, 3, 3, 0, 8}, recillas_a3},
      {{"theorem2_b3", "B3: types of P(C,C'), P(X,delta), P(Ytilde,Y) and the isogeny", 3, 3, 3, 4, 6}, theorem2_b3},
      {{"hyperelliptic_4xi", "B3 with C' rational: P(X,delta) = 4 Xi, isometric to JC", 3, 3, 3, 6, 4},
       hyperelliptic_4xi},
      {{"d3_antidiagonal", "D3: P(X,delta) is the antidiagonal of B x B, type (2,...,2)", 3, 3, 3, 0, 10},
       d3_antidiagonal},
      {{"etale_dn", "D_n, C -> C' unramified: type (2^(n-2),...)", 3, 5, 3, 0, 10}, etale_dn},
      {{"b3_complement", "B3: P(X,delta) inside P(X,X') and its complement", 3, 3, 3, 4, 6}, b3_complement},
      {{"b4_structure", "B4: P(X,delta) and its complement via delta0", 4, 4, 4, 4, 8}, b4_structure},
  };
  return table;
}

const Scenario& find(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.info.name == name) return s;
  std::string known;
  for (const auto& s : scenarios()) known += (known.empty() ? "" : ", ") + s.info.name;
  throw InputError("unknown scenario '" + name + "' (known: " + known + ")");
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& s : scenarios()) v.push_back(s.info);
    return v;
  }();
  return infos;
}

const ScenarioInfo& find_scenario(const std::string& name) { return find(name).info; }

PrymResult verify_scenario(const std::string& name, const cover::MonodromyDatum& datum) {
  const Scenario& s = find(name);
  if (datum.base_genus != 0)
    throw UnsupportedError(name + ": lattice checks need a genus-0 base; use predict for positive genus");
  cover::require_valid(datum);
  require(datum.n >= s.info.min_n && datum.n <= s.info.max_n, name,
          "needs n in [" + std::to_string(s.info.min_n) + ", " + std::to_string(s.info.max_n) + "], got " +
              std::to_string(datum.n));
  require(cover::is_connected(cover::induce(datum, OrbitKind::Vector)), name, "the vector cover C is disconnected");
  Context c(datum);
  c.n = datum.n;
  c.res.scenario = name;
  c.res.datum = datum;
  count_reflections(c);
  c.res.n = c.n;
  c.res.ds = c.ds;
  c.res.dl = c.dl;
  c.pred = cover::predict(c.n, c.ds, c.dl, 0);
  s.run(c);
  finish(c);
  return c.res;
}

std::vector<std::vector<int>> random_s4_transpositions(int count, std::uint64_t seed) {
  if (count < 6 || count % 2 != 0)
    throw GenerationFailure("a transitive degree-4 cover by transpositions needs an even count >= 6");
  std::vector<std::vector<int>> ts;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) {
      std::vector<int> t{1, 2, 3, 4};
      std::swap(t[a - 1], t[b - 1]);
      ts.push_back(t);
    }
  cover::SplitMix64 rng(seed);
  auto mul = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(4);
    for (int i = 0; i < 4; ++i) r[i] = p[q[i] - 1];
    return r;
  };
  for (long attempt = 0; attempt < cover::kMaxRejections; ++attempt) {
    std::vector<std::vector<int>> out;
    std::vector<int> prod{1, 2, 3, 4};
    for (int i = 0; i + 1 < count; ++i) {
      out.push_back(ts[rng.below(ts.size())]);
      prod = mul(prod, out.back());
    }
    // last factor is prod^-1, which must be a transposition
    int moved = 0;
    for (int i = 0; i < 4; ++i) moved += prod[i] != i + 1;
    if (moved != 2) continue;
    out.push_back(prod);
    // transitivity via union-find on the transposed pairs
    std::vector<int> parent{0, 1, 2, 3};
    auto root = [&](int v) {
      while (parent[v] != v) v = parent[v];
      return v;
    };
    for (const auto& t : out)
      for (int i = 0; i < 4; ++i)
        if (t[i] != i + 1) parent[root(i)] = root(t[i] - 1);
    bool transitive = true;
    for (int i = 1; i < 4; ++i) transitive = transitive && root(i) == root(0);
    if (transitive) return out;
  }
  throw GenerationFailure("no transitive transposition datum found");
}

cover::MonodromyDatum d3_from_s4(const std::vector<std::vector<int>>& perms) {
  cover::MonodromyDatum d;
  d.n = 3;
  for (const auto& p : perms) d.gens.push_back(weyl::s4_to_d3(p));
  return d;
}

PrymResult verify_scenario(const std::string& name, int n, long long ds, long long dl, std::uint64_t seed) {
  const auto& info = find(name).info;
  if (n <= 0) n = info.default_n;
  if (ds < 0) ds = info.default_ds;
  if (dl < 0) dl = info.default_dl;
  if (n < info.min_n || n > info.max_n)
    throw InputError(name + ": needs n in [" + std::to_string(info.min_n) + ", " + std::to_string(info.max_n) + "]");
  if (name == "recillas_a3") {
    if (ds != 0) throw InputError(name + ": an S4 transposition datum has no short reflections");
    auto res = verify_scenario(name, d3_from_s4(random_s4_transpositions(static_cast<int>(dl), seed)));
    res.notes.push_back("S4 transposition datum mapped to W(D3)");
    return res;
  }
  return verify_scenario(name, cover::random_simple(n, static_cast<int>(ds), static_cast<int>(dl), seed));
}

// ---------------------------------------------------------------- probe

ProbeReport conjecture_probe(int n, long long ds, long long dl, std::size_t trials, std::uint64_t seed,
                             unsigned threads, const std::function<void(const ProbeRow&)>& on_row) {
  if (n < 4) throw DomainError("conjecture_probe needs n >= 4");
  const auto pred = cover::predict(n, ds, dl, 0);
  const auto& conj = pred.types.at(1);
  if (!conj.in_regime) throw DomainError("no conjectured type for these counts");
  ProbeReport rep;
  rep.n = n;
  rep.ds = ds;
  rep.dl = dl;
  cover::SplitMix64 master(seed);
  std::vector<std::uint64_t> seeds(trials);
  for (auto& s : seeds) s = master.next();

  std::vector<std::optional<ProbeRow>> done(trials);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t emitted = 0;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials) return;
      ProbeRow row;
      try {
        row.trial = i;
        row.seed = seeds[i];
        row.datum = cover::random_simple(n, static_cast<int>(ds), static_cast<int>(dl), seeds[i]);
        corr::HomologyEvaluator ev(row.datum);
        const auto& x = ev.model(OrbitKind::Spinor);
        row.computed = type_of(prym_tyurin_lattice(x).lattice);
        row.conjectured = conj.chain();
        row.known_regime = ds == 0;
        row.agree = row.computed == row.conjectured;
        if (x.component_count() == 1) {
          auto m = mu_check(x, ev.model(OrbitKind::Vector));
          row.mu_surjective = m.surjective;
          row.scaling = m.scaling;
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = trials;
        return;
      }
      std::lock_guard lock(mu);
      done[i] = std::move(row);
      while (emitted < trials && done[emitted]) {
        if (on_row && !failure) on_row(*done[emitted]);
        ++emitted;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  for (auto& r : done) {
    rep.agreements += r->agree;
    rep.rows.push_back(std::move(*r));
  }
  return rep;
}

}  // namespace prymlab::prym
