#include "prymlab/cover.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "prymlab/errors.hpp"

namespace prymlab::cover {

using weyl::RootKind;

Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::optional<Violation> validate(const MonodromyDatum& datum) {
  const int n = datum.n;
  if (n < 1 || n > weyl::kMaxRank) throw DomainError("rank " + std::to_string(n) + " out of range");
  auto check = [n](const SignedPerm& w, const char* what) {
    if (w.rank() != n)
      throw DomainError(std::string(what) + " " + w.to_string() + " has rank " + std::to_string(w.rank()) +
                        ", expected " + std::to_string(n));
  };
  for (const auto& g : datum.gens) check(g, "generator");
  for (const auto& h : datum.handles) {
    check(h.alpha, "handle");
    check(h.beta, "handle");
  }
  if (datum.base_genus < 0) return Violation{"negative base genus", {}, {}};
  if (static_cast<int>(datum.handles.size()) != datum.base_genus)
    return Violation{"expected " + std::to_string(datum.base_genus) + " handle pairs, got " +
                         std::to_string(datum.handles.size()),
                     {}, {}};
  if (datum.gens.empty() && datum.base_genus == 0) return Violation{"no branch points on a genus-0 base", {}, {}};

  SignedPerm lhs = SignedPerm::identity(n), rhs = SignedPerm::identity(n);
  for (const auto& g : datum.gens) lhs = lhs * g;
  for (const auto& h : datum.handles) rhs = rhs * weyl::commutator(h.alpha, h.beta);
  if (lhs != rhs)
    return Violation{"product relation fails: generators multiply to " + lhs.to_string() +
                         ", commutators to " + rhs.to_string(),
                     lhs, rhs};
  return std::nullopt;
}

void require_valid(const MonodromyDatum& datum) {
  if (auto v = validate(datum)) throw InputError(v->message);
}

CoverModel induce(const MonodromyDatum& datum, OrbitKind orbit) {
  require_valid(datum);
  CoverModel c;
  c.datum = datum;
  c.orbit = orbit;
  c.labels = weyl::orbit_labels(orbit, datum.n);
  for (const auto& g : datum.gens) c.perms.push_back(weyl::orbit_permutation(g, orbit));
  for (const auto& h : datum.handles)
    c.handle_perms.emplace_back(weyl::orbit_permutation(h.alpha, orbit), weyl::orbit_permutation(h.beta, orbit));
  return c;
}

std::vector<std::vector<int>> components(const CoverModel& cover) {
  const std::size_t d = cover.degree();
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](const Perm& p) {
    for (std::size_t i = 0; i < d; ++i) {
      int a = find(static_cast<int>(i)), b = find(p[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  };
  for (const auto& p : cover.perms) unite(p);
  for (const auto& [a, b] : cover.handle_perms) {
    unite(a);
    unite(b);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    const int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(static_cast<int>(i));
  }
  return out;
}

bool is_connected(const CoverModel& cover) { return components(cover).size() == 1; }

RamificationReport ramification(const CoverModel& cover) {
  RamificationReport r;
  r.simple = true;
  const int n = cover.datum.n;
  for (std::size_t i = 0; i < cover.perms.size(); ++i) {
    BranchRamification b;
    b.cycle_type = cycle_type(cover.perms[i]);
    b.reflection = weyl::reflection_kind(cover.datum.gens[i]);
    if (!b.reflection) {
      r.simple = false;
    } else if (*b.reflection == RootKind::Short) {
      r.short_points.push_back(i);
    } else {
      r.long_points.push_back(i);
    }
    if (b.reflection && cover.orbit == OrbitKind::Spinor) {
      const long expected = *b.reflection == RootKind::Short ? 1L << (n - 1) : 1L << (n - 2);
      const long twos = std::count(b.cycle_type.begin(), b.cycle_type.end(), 2);
      if (twos != expected || b.cycle_type.front() > 2)
        throw InternalError("reflection at branch point " + std::to_string(i + 1) + " acts on the spinor fiber with " +
                            std::to_string(twos) + " transpositions, expected " + std::to_string(expected));
    }
    r.points.push_back(std::move(b));
  }
  return r;
}

namespace {

long long genus_of(const CoverModel& cover, const std::vector<int>& part) {
  const long long d = static_cast<long long>(part.size());
  long long ram = 0;
  for (const auto& p : cover.perms) {
    // d minus the number of cycles inside the component
    std::vector<char> seen(cover.degree(), 0);
    long long cycles = 0;
    for (int i : part) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = p[j]) seen[j] = 1;
    }
    ram += d - cycles;
  }
  const long long twice = 2 - 2 * d * (1 - cover.datum.base_genus) + ram;
  if (twice % 2 != 0) throw InternalError("odd total ramification");
  return twice / 2;
}

}  // namespace

long long genus(const CoverModel& cover) {
  auto parts = components(cover);
  if (parts.size() != 1) {
    std::ostringstream os;
    os << "cover is disconnected with " << parts.size() << " components:";
    for (const auto& p : parts) {
      os << " {";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << cover.labels[p[i]].to_string();
      os << "}";
    }
    throw DomainError(os.str());
  }
  return genus_of(cover, parts.front());
}

std::vector<long long> component_genera(const CoverModel& cover) {
  std::vector<long long> out;
  for (const auto& p : components(cover)) out.push_back(genus_of(cover, p));
  return out;
}

lattice::PolType PredictedType::chain() const {
  if (!in_regime) throw DomainError("predicted type " + name + " is out of regime: " + note);
  std::vector<std::pair<long long, long long>> sorted = parts;
  std::sort(sorted.begin(), sorted.end());
  lattice::PolType t;
  for (const auto& [mult, count] : sorted)
    for (long long i = 0; i < count; ++i) t.chain.push_back(mult);
  return t;
}

long long PredictedType::dimension() const {
  long long d = 0;
  for (const auto& p : parts) d += p.second;
  return d;
}

namespace {

PredictedType make_type(std::string name, std::vector<std::pair<long long, long long>> parts) {
  PredictedType t{std::move(name), std::move(parts), true, ""};
  for (const auto& [mult, count] : t.parts)
    if (count < 0) {
      t.in_regime = false;
      t.note = "multiplicity of " + std::to_string(mult) + " would be " + std::to_string(count);
    }
  return t;
}

}  // namespace

Prediction predict(int n, long long ds, long long dl, long long gy) {
  if (n < 2 || n > weyl::kMaxRank) throw DomainError("predict needs 2 <= n <= " + std::to_string(weyl::kMaxRank));
  if (ds < 0 || dl < 0 || gy < 0) throw DomainError("counts must be nonnegative");
  if (ds % 2 || dl % 2) throw DomainError("branch counts must be even");
  Prediction p;
  p.n = n;
  p.ds = ds;
  p.dl = dl;
  p.gy = gy;
  const long long two_n = 1LL << n;
  p.g_c_prime = dl / 2 + n * gy - n + 1;
  p.g_c = ds / 2 + dl + 2 * n * gy - 2 * n + 1;
  // 2^(n-3)|D_l| is an integer for n = 2 because |D_l| is even
  p.g_x = (two_n / 4) * ds + (n >= 3 ? (two_n / 8) * dl : dl / 2) + two_n * gy - two_n + 1;
  p.dim_p_c = p.g_c - p.g_c_prime;
  p.dim_p_x_delta = p.dim_p_c;
  p.dim_p_ytilde = ds / 2 + gy - 1;
  if (n >= 3) {
    p.dim_p_x_xprime = (p.g_x - 1) / 2;
  } else {
    const long long g_x_prime = ds / 2 + 2 * gy - 1;
    p.dim_p_x_xprime = p.g_x - g_x_prime;
  }

  const long long low = two_n / 4;  // 2^(n-2)
  if (ds == 0 || ds == 2) {
    p.types.push_back(make_type("P(C,C')", {{2, p.dim_p_c}}));
  } else {
    p.types.push_back(make_type("P(C,C')", {{1, ds / 2 - 1}, {2, p.g_c_prime}}));
  }
  if (n == 2) {
    p.types.push_back(make_type("P(X,X')", {{1, dl / 2 - 1}, {2, ds / 2 - 1 + 2 * gy}}));
  } else if (n == 3 && ds >= 4) {
    p.types.push_back(make_type("P(X,delta)", {{2, dl / 2 + 2 * gy - 2}, {4, ds / 2 - 1}, {8, gy}}));
  } else if (ds == 0 || ds == 2) {
    p.types.push_back(make_type("P(X,delta)", {{low, p.dim_p_x_delta}}));
  } else if (gy == 0) {
    auto t = make_type("P(X,delta)", {{low, dl / 2 + 1 - n}, {2 * low, ds / 2 - 1}});
    t.note = t.in_regime ? "conjectural" : t.note;
    p.types.push_back(t);
  } else {
    PredictedType t{"P(X,delta)", {}, false, "no prediction for n >= 4 over a base of positive genus"};
    p.types.push_back(t);
  }
  if (ds == 0) {
    p.types.push_back(make_type("P(Ytilde,Y)", {{2, p.dim_p_ytilde}}));
  } else {
    p.types.push_back(make_type("P(Ytilde,Y)", {{1, p.dim_p_ytilde}}));
  }
  return p;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

MonodromyDatum random_simple(int n, int count_s, int count_l, std::uint64_t seed) {
  if (n < 1 || n > weyl::kMaxRank) throw DomainError("rank out of range");
  if (count_s < 0 || count_l < 0) throw DomainError("counts must be nonnegative");
  if (count_l > 0 && n < 2) throw DomainError("no long roots in rank 1");
  const int k = count_s + count_l;
  if (k == 0) throw DomainError("at least one branch point is required on a genus-0 base");
  // each short reflection flips the sign parity and long ones keep it
  if (count_s % 2 != 0)
    throw GenerationFailure("an odd number of short reflections cannot multiply to the identity");
  // long reflections act on |x| as transpositions: they must multiply to 1 and connect n letters
  if (count_l % 2 != 0)
    throw GenerationFailure("an odd number of long reflections cannot multiply to the identity");
  if (count_l < 2 * (n - 1))
    throw GenerationFailure("a connected vector cover needs at least 2(n-1) long reflections");

  const auto shorts = weyl::reflections(n, RootKind::Short);
  const auto longs = weyl::reflections(n, RootKind::Long);
  SplitMix64 rng(seed);
  std::vector<RootKind> kinds(count_s, RootKind::Short);
  kinds.insert(kinds.end(), count_l, RootKind::Long);

  for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
    for (std::size_t i = kinds.size(); i > 1; --i) std::swap(kinds[i - 1], kinds[rng.below(i)]);
    MonodromyDatum d;
    d.n = n;
    SignedPerm prod = SignedPerm::identity(n);
    for (int i = 0; i + 1 < k; ++i) {
      const auto& pool = kinds[i] == RootKind::Short ? shorts : longs;
      d.gens.push_back(pool[rng.below(pool.size())]);
      prod = prod * d.gens.back();
    }
    SignedPerm last = prod.inverse();
    if (weyl::reflection_kind(last) != kinds[k - 1]) continue;
    d.gens.push_back(last);
    if (!is_connected(induce(d, OrbitKind::Vector))) continue;
    return d;
  }
  throw GenerationFailure("no datum found after " + std::to_string(kMaxRejections) + " rejections");
}

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

SignedPerm perm_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of signed integers");
  std::vector<int> img;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(where + ": expected an array of signed integers");
    img.push_back(x.get<int>());
  }
  try {
    return SignedPerm::from_images(img);
  } catch (const DomainError& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace

MonodromyDatum parse_datum(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  if (!j.is_object()) throw InputError("datum must be a JSON object");
  auto integer = [&](const char* key, bool required, int fallback) {
    if (!j.contains(key)) {
      if (required) throw InputError(std::string("missing field \"") + key + "\"");
      return fallback;
    }
    if (!j[key].is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
    return j[key].get<int>();
  };
  MonodromyDatum d;
  d.n = integer("n", true, 0);
  d.base_genus = integer("base_genus", false, 0);
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) throw InputError("\"generators\" must be an array");
    for (std::size_t i = 0; i < j["generators"].size(); ++i)
      d.gens.push_back(perm_from_json(j["generators"][i], "generator " + std::to_string(i + 1)));
  }
  if (j.contains("handles")) {
    if (!j["handles"].is_array()) throw InputError("\"handles\" must be an array");
    for (std::size_t i = 0; i < j["handles"].size(); ++i) {
      const auto& h = j["handles"][i];
      const std::string where = "handle " + std::to_string(i + 1);
      if (!h.is_array() || h.size() != 2) throw InputError(where + ": expected a pair of signed permutations");
      d.handles.push_back({perm_from_json(h[0], where), perm_from_json(h[1], where)});
    }
  }
  for (const auto& g : d.gens)
    if (g.rank() != d.n) throw InputError("generator " + g.to_string() + " does not have rank " + std::to_string(d.n));
  for (const auto& h : d.handles)
    if (h.alpha.rank() != d.n || h.beta.rank() != d.n)
      throw InputError("handle generators must have rank " + std::to_string(d.n));
  return d;
}

std::string datum_to_json(const MonodromyDatum& d) {
  json j;
  j["n"] = d.n;
  j["base_genus"] = d.base_genus;
  j["generators"] = json::array();
  for (const auto& g : d.gens) j["generators"].push_back(g.images());
  j["handles"] = json::array();
  for (const auto& h : d.handles) j["handles"].push_back({h.alpha.images(), h.beta.images()});
  return j.dump();
}

}  // namespace prymlab::cover
