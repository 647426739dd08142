#include "prymlab/corr.hpp"

#include <bit>
#include <cstdlib>
#include <functional>

#include "prymlab/errors.hpp"

namespace prymlab::corr {

namespace {

void check_n(int n) {
  if (n < 2 || n > weyl::kMaxRank) throw DomainError("correspondences need 2 <= n <= " + std::to_string(weyl::kMaxRank));
}

std::size_t size_of(OrbitKind kind, int n) { return weyl::orbit_size(kind, n); }

int popcount(unsigned x) { return std::popcount(x); }

}  // namespace

bool is_equivariant(const FiberMatrix& m) {
  for (const auto& w : weyl::all_reflections(m.n)) {
    const auto p = weyl::orbit_permutation(w, m.src);
    const auto q = weyl::orbit_permutation(w, m.dst);
    for (std::size_t i = 0; i < m.entries.rows(); ++i)
      for (std::size_t j = 0; j < m.entries.cols(); ++j)
        if (m.entries(p[i], q[j]) != m.entries(i, j)) return false;
  }
  return true;
}

FiberMatrix FiberMatrix::make(int n, OrbitKind src, OrbitKind dst, IntMatrix entries) {
  check_n(n);
  if (entries.rows() != size_of(src, n) || entries.cols() != size_of(dst, n))
    throw DomainError("fiber matrix shape does not match the orbits");
  FiberMatrix m{n, src, dst, std::move(entries)};
  if (!is_equivariant(m)) throw DomainError("fiber matrix is not W-equivariant");
  return m;
}

Int FiberMatrix::degree() const {
  Int s = 0;
  for (std::size_t j = 0; j < entries.cols(); ++j) s += entries(0, j);
  return s;
}

FiberMatrix identity(int n, OrbitKind kind) {
  return FiberMatrix::make(n, kind, kind, IntMatrix::identity(size_of(kind, n)));
}

FiberMatrix trace(int n, OrbitKind src, OrbitKind dst) {
  return FiberMatrix::make(n, src, dst, IntMatrix::constant(size_of(src, n), size_of(dst, n), 1));
}

FiberMatrix minus_identity(int n, OrbitKind kind) {
  const auto minus = weyl::SignedPerm::minus_identity(n);
  const auto p = weyl::orbit_permutation(minus, kind);
  IntMatrix m(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(i, p[i]) = 1;
  return FiberMatrix::make(n, kind, kind, std::move(m));
}

FiberMatrix projection(int n, OrbitKind src, OrbitKind dst) {
  check_n(n);
  const auto from = weyl::orbit_labels(src, n);
  IntMatrix m(from.size(), size_of(dst, n));
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto& x = from[i];
    weyl::OrbitLabel y;
    if (src == OrbitKind::Spinor && dst == OrbitKind::Parity) {
      y = weyl::OrbitLabel::parity(n, popcount(static_cast<unsigned>(x.value)) % 2);
    } else if (src == OrbitKind::Spinor && dst == OrbitKind::SpinorClass) {
      y = weyl::OrbitLabel::spinor_class(n, static_cast<unsigned>(x.value));
    } else if (src == OrbitKind::Vector && dst == OrbitKind::PairClass) {
      y = weyl::OrbitLabel::pair_class(n, std::abs(x.value));
    } else {
      throw DomainError("no projection from " + weyl::to_string(src) + " to " + weyl::to_string(dst));
    }
    m(i, weyl::label_index(y)) = 1;
  }
  return FiberMatrix::make(n, src, dst, std::move(m));
}

FiberMatrix parity_sign(int n) {
  check_n(n);
  const std::size_t N = std::size_t{1} << n;
  IntMatrix m(N, N);
  for (unsigned a = 0; a < N; ++a)
    for (unsigned b = 0; b < N; ++b) m(a, b) = (popcount(a) + popcount(b)) % 2 ? -1 : 1;
  return FiberMatrix::make(n, OrbitKind::Spinor, OrbitKind::Spinor, std::move(m));
}

FiberMatrix make_D(int n) {
  check_n(n);
  const std::size_t N = std::size_t{1} << n;
  IntMatrix m(N, N);
  for (unsigned a = 0; a < N; ++a)
    for (unsigned b = 0; b < N; ++b)
      if (a != b) m(a, b) = popcount(a ^ b) - 1;
  return FiberMatrix::make(n, OrbitKind::Spinor, OrbitKind::Spinor, std::move(m));
}

FiberMatrix make_Di(int n, int i) {
  check_n(n);
  if (i < 0 || i >= n) throw DomainError("D_i needs 0 <= i < n");
  const std::size_t N = std::size_t{1} << n;
  IntMatrix m(N, N);
  for (unsigned a = 0; a < N; ++a)
    for (unsigned b = 0; b < N; ++b)
      if (popcount(a ^ b) == i + 1) m(a, b) = 1;
  return FiberMatrix::make(n, OrbitKind::Spinor, OrbitKind::Spinor, std::move(m));
}

SFamily make_S_family(int n) {
  check_n(n);
  const std::size_t N = std::size_t{1} << n, V = 2 * static_cast<std::size_t>(n);
  IntMatrix s0(N, V), s1(N, V);
  for (unsigned a = 0; a < N; ++a)
    for (int j = 1; j <= n; ++j) {
      const bool in = (a >> (j - 1)) & 1u;
      const std::size_t plus = 2 * (j - 1), minus = plus + 1;
      s0(a, in ? plus : minus) = 1;
      s1(a, in ? minus : plus) = 1;
    }
  auto T = trace(n, OrbitKind::Spinor, OrbitKind::Vector);
  IntMatrix s = 2L * s0 + static_cast<long>(n) * T.entries;
  return {FiberMatrix::make(n, OrbitKind::Spinor, OrbitKind::Vector, std::move(s)),
          FiberMatrix::make(n, OrbitKind::Spinor, OrbitKind::Vector, std::move(s0)),
          FiberMatrix::make(n, OrbitKind::Spinor, OrbitKind::Vector, std::move(s1)),
          T,
          trace(n, OrbitKind::Spinor, OrbitKind::Spinor),
          trace(n, OrbitKind::Vector, OrbitKind::Vector)};
}

OrbitGram orbit_gram(int n, Weight weight, long scale) {
  check_n(n);
  if (scale >= 0) throw DomainError("orbit_gram needs a negative definite form (scale < 0)");
  // doubled coordinates 2λ are integral for both weights
  std::vector<std::vector<long>> pts;
  if (weight == Weight::Vector) {
    for (int j = 1; j <= n; ++j)
      for (int s : {1, -1}) {
        std::vector<long> v(n, 0);
        v[j - 1] = 2 * s;
        pts.push_back(v);
      }
  } else {
    for (unsigned a = 0; a < (1u << n); ++a) {
      std::vector<long> v(n);
      for (int j = 0; j < n; ++j) v[j] = (a >> j & 1u) ? -1 : 1;
      pts.push_back(v);
    }
  }
  // 4 (λ_i | λ_j) = scale · <2λ_i, 2λ_j>
  auto dot4 = [&](std::size_t i, std::size_t j) {
    long s = 0;
    for (int k = 0; k < n; ++k) s += pts[i][k] * pts[j][k];
    return scale * s;
  };
  const std::size_t d = pts.size();
  OrbitGram g{weight, n, scale, IntMatrix(d, d), 0};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const long num = dot4(i, j) - dot4(i, i);
      if (num % 4 != 0) throw DomainError("orbit_gram: (λ_i | λ_j - λ_i) is not integral for this scale");
      g.gram(i, j) = num / 4 - 1;
    }
  const long qnum = -static_cast<long>(d) * dot4(0, 0);
  if (qnum % (4L * n) != 0) throw DomainError("orbit_gram: exponent q is not integral for this scale");
  g.q = qnum / (4L * n);
  return g;
}

IntMatrix FiberEvaluator::id(OrbitKind kind) const { return IntMatrix::identity(size_of(kind, n_)); }

HomologyEvaluator::HomologyEvaluator(cover::MonodromyDatum datum) : datum_(std::move(datum)) {
  cover::require_valid(datum_);
  if (datum_.base_genus != 0) throw UnsupportedError("homology-level checks need a genus-0 base");
}

const surface::HomologyModel& HomologyEvaluator::model(OrbitKind kind) const {
  auto it = models_.find(kind);
  if (it == models_.end()) {
    auto m = std::make_shared<surface::HomologyModel>(surface::build_disjoint(cover::induce(datum_, kind)));
    it = models_.emplace(kind, std::move(m)).first;
  }
  return *it->second;
}

IntMatrix HomologyEvaluator::op(const FiberMatrix& m) const {
  if (m.n != datum_.n) throw DomainError("fiber matrix rank does not match the datum");
  return surface::induced_map(model(m.src), model(m.dst), m.entries);
}

IntMatrix HomologyEvaluator::id(OrbitKind kind) const { return IntMatrix::identity(model(kind).rank()); }

namespace {


// Collects equations; the first failure is kept as the witness.
class Checker {
 public:
  explicit Checker(IdentityResult& r) : r_(r) {}
  void equal(const std::string& what, const IntMatrix& lhs, const IntMatrix& rhs) {
    if (!r_.pass) return;
    if (lhs == rhs) return;
    r_.pass = false;
    r_.failed = what;
    r_.lhs = lhs;
    r_.rhs = rhs;
  }
  void scalar(const std::string& name, const Int& value) { r_.scalars.emplace_back(name, value); }

 private:
  IdentityResult& r_;
};

// c with lhs == c * base, if any (base nonzero).
std::optional<Int> solve_scalar(const IntMatrix& lhs, const IntMatrix& base) {
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j)
      if (sgn(base(i, j)) != 0) {
        if (!mpz_divisible_p(lhs(i, j).get_mpz_t(), base(i, j).get_mpz_t())) return std::nullopt;
        Int c = lhs(i, j) / base(i, j);
        if (c * base == lhs) return c;
        return std::nullopt;
      }
  return std::nullopt;
}

Int solved(Checker& chk, IdentityResult& r, const std::string& name, const IntMatrix& lhs, const IntMatrix& base) {
  auto c = solve_scalar(lhs, base);
  if (!c) {
    if (r.pass) {
      r.pass = false;
      r.failed = "no integer " + name + " solves the fiber-level equation";
      r.lhs = lhs;
      r.rhs = base;
    }
    return 0;
  }
  chk.scalar(name, *c);
  return *c;
}

Int binomial(int n, int k) {
  Int c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return c;
}

using Body = std::function<void(int, const Evaluator&, IdentityResult&, Checker&)>;

void trace_lemma(int n, const Evaluator& ev, IdentityResult& r, Checker& chk) {
  const FiberEvaluator fib(n);
  auto fam = make_S_family(n);
  const std::pair<const char*, const FiberMatrix*> maps[] = {{"S0", &fam.S0}, {"S", &fam.S}, {"S1", &fam.S1}};
  for (const auto& [label, s] : maps) {
    const auto tT = fam.T.transposed(), tS = s->transposed();
    const Int a = solved(chk, r, std::string("a(") + label + ")", fib.op(tT) * fib.op(*s), fib.op(fam.T1));
    const Int b = solved(chk, r, std::string("b(") + label + ")", fib.op(*s) * fib.op(tT), fib.op(fam.T2));
    const std::string l = label;
    chk.equal("tT." + l + " = a T1", ev.op(tT) * ev.op(*s), a * ev.op(fam.T1));
    chk.equal("t" + l + ".T = a T1", ev.op(tS) * ev.op(fam.T), a * ev.op(fam.T1));
    chk.equal(l + ".tT = b T2", ev.op(*s) * ev.op(tT), b * ev.op(fam.T2));
    chk.equal("T.t" + l + " = b T2", ev.op(fam.T) * ev.op(tS), b * ev.op(fam.T2));
  }
}

void s0t_s0(int n, const Evaluator& ev, IdentityResult& r, Checker& chk) {
  const FiberEvaluator fib(n);
  auto fam = make_S_family(n);
  auto D = make_D(n);
  const auto tS0 = fam.S0.transposed();
  const IntMatrix base = fib.id(OrbitKind::Spinor) - fib.op(D);
  const Int f1 = solved(chk, r, "f1", fib.op(tS0) * fib.op(fam.S0) - base, fib.op(fam.T1));
  chk.equal("f1 = n-1", IntMatrix{{static_cast<long>(f1.get_si())}}, IntMatrix{{n - 1L}});
  chk.equal("tS0.S0 = E - D + (n-1) T1", ev.op(tS0) * ev.op(fam.S0),
            ev.id(OrbitKind::Spinor) - ev.op(D) + Int(n - 1) * ev.op(fam.T1));
}

void s0_s0t(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  auto fam = make_S_family(n);
  auto iota = minus_identity(n, OrbitKind::Vector);
  const Int c = Int(1) << (n - 2);
  chk.scalar("c", c);
  chk.equal("S0.tS0 = c(E - I) + c T2", ev.op(fam.S0) * ev.op(fam.S0.transposed()),
            c * (ev.id(OrbitKind::Vector) - ev.op(iota)) + c * ev.op(fam.T2));
}

void sigma_commutes_D(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  auto D = ev.op(make_D(n));
  auto sigma = ev.op(minus_identity(n, OrbitKind::Spinor));
  chk.equal("sigma D = D sigma", sigma * D, D * sigma);
}

void sigma_trace(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  const auto E = ev.id(OrbitKind::Spinor);
  auto D = ev.op(make_D(n));
  auto sigma = ev.op(minus_identity(n, OrbitKind::Spinor));
  auto T1 = ev.op(trace(n, OrbitKind::Spinor, OrbitKind::Spinor));
  chk.equal("(D - E)(E + sigma) = (n-2) T1", (D - E) * (E + sigma), Int(n - 2) * T1);
}

void quadratic(int n, const Evaluator& ev, IdentityResult& r, Checker& chk) {
  const FiberEvaluator fib(n);
  const Int q = Int(1) << (n - 1);
  auto Dm = make_D(n);
  auto T1m = trace(n, OrbitKind::Spinor, OrbitKind::Spinor);
  auto lhs = [&](const Evaluator& e) {
    const auto E = e.id(OrbitKind::Spinor);
    auto D = e.op(Dm);
    return (D - E) * (D + (q - 1) * E);
  };
  chk.scalar("q", q);
  const Int m = solved(chk, r, "m", lhs(fib), fib.op(T1m));
  chk.equal("(D - E)(D + (q-1)E) = m T1", lhs(ev), m * ev.op(T1m));
}

void parity_pushforward(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  Int M = 0;
  for (int k = 0; k <= n; k += 2) M += binomial(n, k) * (k - 1);
  chk.scalar("M", M);
  auto par = ev.op(projection(n, OrbitKind::Spinor, OrbitKind::Parity));
  auto D = ev.op(make_D(n));
  const auto E = ev.id(OrbitKind::Spinor);
  chk.equal("Par (D - E) = M J", par * (D - E), M * ev.op(trace(n, OrbitKind::Spinor, OrbitKind::Parity)));
}

FiberMatrix parity_swap(int n) {
  return FiberMatrix::make(n, OrbitKind::Parity, OrbitKind::Parity, IntMatrix{{0, 1}, {1, 0}});
}

void antidiagonal_q8(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  const auto E = ev.id(OrbitKind::Spinor);
  auto D = ev.op(make_D(n));
  auto pull = ev.op(projection(n, OrbitKind::Spinor, OrbitKind::Parity).transposed());
  auto anti = pull * (ev.id(OrbitKind::Parity) - ev.op(parity_swap(n)));
  chk.equal("(D + 7E) f*(y1 - y2) = 8 f*(y1 - y2)", (D + 7L * E) * anti, 8L * anti);
  chk.equal("(D - E) f*(y1 - y2) = 0", (D - E) * anti, IntMatrix(anti.rows(), anti.cols()));
}

void parity_fiber_D(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  auto D = ev.op(make_D(n));
  auto pull = ev.op(projection(n, OrbitKind::Spinor, OrbitKind::Parity).transposed());
  auto full = ev.op(trace(n, OrbitKind::Parity, OrbitKind::Spinor));
  chk.equal("D f_i* = 8 f* + f_i*", D * pull, 8L * full + pull);
}

void delta0_square(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  const auto E = ev.id(OrbitKind::Spinor);
  auto D0 = ev.op(make_Di(n, 0)), D1 = ev.op(make_Di(n, 1));
  auto sigma = ev.op(minus_identity(n, OrbitKind::Spinor));
  chk.equal("(D0 + 2)(D0 - 2)(E + sigma) = 4 D1", (D0 + 2L * E) * (D0 - 2L * E) * (E + sigma), 4L * D1);
}

void d3_antidiagonal(int n, const Evaluator& ev, IdentityResult&, Checker& chk) {
  const auto E = ev.id(OrbitKind::Spinor);
  auto D = ev.op(make_D(n));
  auto sigma = ev.op(minus_identity(n, OrbitKind::Spinor));
  auto T1 = ev.op(trace(n, OrbitKind::Spinor, OrbitKind::Spinor));
  auto Pi = ev.op(parity_sign(n));
  auto par = projection(n, OrbitKind::Spinor, OrbitKind::Parity);
  auto same = ev.op(par.transposed()) * ev.op(par);
  chk.equal("D = f_i* f_i - E + 2 sigma", D, same - E + 2L * sigma);
  chk.equal("(D - E)(E + sigma) = T1", (D - E) * (E + sigma), T1);
  chk.equal("(E - D)(E - sigma) = 4(E - sigma) - Pi", (E - D) * (E - sigma), 4L * (E - sigma) - Pi);
}

void isogeny_scalars(int n, const Evaluator& ev, IdentityResult& r, Checker& chk) {
  const FiberEvaluator fib(n);
  auto fam = make_S_family(n);
  auto Dm = make_D(n);
  auto iota = minus_identity(n, OrbitKind::Vector);
  const Int q = Int(1) << (n - 1);
  const auto tS = fam.S.transposed();
  // tS.S = -q'G + d1 T1 with q' = 4, G = D - E
  auto left = [&](const Evaluator& e) {
    return e.op(tS) * e.op(fam.S) - 4L * (e.id(OrbitKind::Spinor) - e.op(Dm));
  };
  // S.tS = -q G' + d2 T2 with G' = 2(I - E) + T2
  auto right = [&](const Evaluator& e) {
    return e.op(fam.S) * e.op(tS) + q * (2L * (e.op(iota) - e.id(OrbitKind::Vector)));
  };
  const Int d1 = solved(chk, r, "d1", left(fib), fib.op(fam.T1));
  const Int d2q = solved(chk, r, "d2 - q", right(fib), fib.op(fam.T2));
  chk.scalar("d2", d2q + q);
  chk.equal("tS.S = 4(E - D) + d1 T1", left(ev), d1 * ev.op(fam.T1));
  chk.equal("S.tS = -q G' + d2 T2", right(ev), d2q * ev.op(fam.T2));
  // -S = 2 S1 - (n+2) T, entrywise
  chk.equal("-S = 2 S1 - (n+2) T", Int(-1) * fam.S.entries,
            2L * fam.S1.entries - static_cast<long>(n + 2) * fam.T.entries);
}

struct Entry {
  IdentityInfo info;
  Body body;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"trace_lemma", 'a', 2, 6, false, "tT.S = tS.T = a T1 and S.tT = T.tS = b T2"}, trace_lemma},
      {{"s0t_s0", 'b', 2, 6, false, "tS0.S0 = E - D + (n-1) T1"}, s0t_s0},
      {{"s0_s0t", 'c', 2, 6, false, "S0.tS0 = 2^(n-2)(E - I) + 2^(n-2) T2"}, s0_s0t},
      {{"sigma_commutes_D", 'd', 2, 6, false, "sigma D = D sigma"}, sigma_commutes_D},
      {{"sigma_trace", 'e', 2, 6, false, "(D - E)(E + sigma) = (n-2) T1"}, sigma_trace},
      {{"quadratic", 'f', 2, 6, false, "(D - E)(D + (2^(n-1) - 1)E) = m T1"}, quadratic},
      {{"parity_pushforward", 'g', 3, 5, true, "Par (D - E) = M J, M = sum over even k of C(n,k)(k-1)"},
       parity_pushforward},
      {{"antidiagonal_q8", 'h', 4, 4, false, "(D + 7) f*(y1 - y2) = 8 f*(y1 - y2), (D - 1) f*(y1 - y2) = 0"},
       antidiagonal_q8},
      {{"parity_fiber_D", 'i', 4, 4, false, "D f_i*(y) = 8 f*(y) + f_i*(y)"}, parity_fiber_D},
      {{"delta0_square", 'j', 4, 4, false, "(D0 + 2)(D0 - 2)(x + sigma x) = 4 D1(x)"}, delta0_square},
      {{"d3_antidiagonal", 'k', 3, 3, false, "(D - 1)(x + sigma x) = T1 x, (1 - D)(x - sigma x) = 4(x - sigma x) - Pi x"},
       d3_antidiagonal},
      {{"isogeny_scalars", '-', 2, 6, false, "tS.S = 4(E - D) + d1 T1, S.tS = -q G' + d2 T2, -S = 2 S1 - (n+2) T"},
       isogeny_scalars},
  };
  return table;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name || (name.size() == 1 && name[0] == e.info.letter && e.info.letter != '-')) return e;
  std::string known;
  for (const auto& e : entries()) known += (known.empty() ? "" : ", ") + e.info.name;
  throw DomainError("unknown identity '" + name + "' (known: " + known + ")");
}

}  // namespace

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> infos = [] {
    std::vector<IdentityInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const IdentityInfo& find_identity(const std::string& name) { return find_entry(name).info; }

bool applies(const IdentityInfo& info, int n) {
  return n >= info.min_n && n <= info.max_n && (!info.odd_only || n % 2 == 1);
}

IdentityResult check_identity(const std::string& name, int n) { return check_identity(name, n, FiberEvaluator(n)); }

IdentityResult check_identity(const std::string& name, int n, const Evaluator& level) {
  const Entry& e = find_entry(name);
  if (!applies(e.info, n))
    throw DomainError("identity " + e.info.name + " applies to n in [" + std::to_string(e.info.min_n) + ", " +
                      std::to_string(e.info.max_n) + "]" + (e.info.odd_only ? " with n odd" : "") + ", got " +
                      std::to_string(n));
  IdentityResult r;
  r.name = e.info.name;
  r.letter = e.info.letter;
  r.n = n;
  r.level = level.level();
  r.pass = true;
  Checker chk(r);
  e.body(n, level, r, chk);
  return r;
}

}  // namespace prymlab::corr
