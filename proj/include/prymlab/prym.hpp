#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prymlab/corr.hpp"
#include "prymlab/cover.hpp"
#include "prymlab/lattice.hpp"
#include "prymlab/surface.hpp"

/// Prym and Prym-Tyurin lattices of coverings of P^1, the μ criterion and
/// the named verification scenarios.
namespace prymlab::prym {

/// Saturation of (1 - ι_*)H_1 with the intersection form. The fiber matrix must
/// be an involutive permutation on the cover's own orbit.
lattice::PolarizedLattice prym_lattice(const surface::HomologyModel& cover, const corr::FiberMatrix& involution);

struct PrymTyurin {
  lattice::PolarizedLattice lattice;
  /// δ_* on H_1(X)
  IntMatrix delta;
  /// 2^(n-1)
  long long q = 0;
};

/// δ from the correspondence D on the spinor cover. Checks
/// (δ - 1)(δ + q - 1) = 0 exactly and throws InternalError if it fails.
PrymTyurin prym_tyurin_lattice(const surface::HomologyModel& spinor);

struct MuCheck {
  bool surjective = false;
  bool scaling = false;
};

/// s0_* : H_1(X) -> P(C,C') onto, and E_X(ᵗs0 a, ᵗs0 b) = 2^(n-1) E_C(a, b) on
/// P(C,C'). Both covers must be connected and come from one datum.
MuCheck mu_check(const surface::HomologyModel& spinor, const surface::HomologyModel& vector);

/// Certifies that the lattice map `map` (columns: images of src basis cycles)
/// takes src_sub bijectively onto dst_sub with E_dst = factor * E_src.
struct IsometryCertificate {
  bool bijective = false;
  bool scales = false;
  bool ok() const { return bijective && scales; }
};
IsometryCertificate certify_isometry(const IntMatrix& map, const lattice::PolarizedLattice& src_sub,
                                     const lattice::PolarizedLattice& dst_sub, long long factor);

struct TypeRecord {
  std::string name;
  long long dim = 0;
  lattice::PolType computed;
  std::optional<lattice::PolType> predicted;
  std::string note;
  bool matches() const { return !predicted || *predicted == computed; }
};

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PrymResult {
  std::string scenario;
  int n = 0;
  long long ds = 0, dl = 0;
  cover::MonodromyDatum datum;
  std::vector<TypeRecord> types;
  /// Unset when the spinor cover is disconnected.
  std::optional<bool> mu_surjective, scaling_verified;
  std::vector<CheckRecord> checks;
  std::vector<std::string> notes;
  bool verdict = false;

  const TypeRecord* type(const std::string& name) const;
  const CheckRecord* check(const std::string& name) const;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  int min_n, max_n, default_n;
  long long default_ds, default_dl;
};

const std::vector<ScenarioInfo>& scenario_catalog();
const ScenarioInfo& find_scenario(const std::string& name);

/// Datum as a genus-0 B_n or D_n datum. Throws InputError naming the violated
/// constraint, UnsupportedError for positive base genus.
PrymResult verify_scenario(const std::string& name, const cover::MonodromyDatum& datum);
/// Generates the datum first; n <= 0 and negative counts take the scenario defaults.
PrymResult verify_scenario(const std::string& name, int n, long long ds, long long dl, std::uint64_t seed);

/// Random simply branched degree-4 cover of P^1 by transpositions, as images
/// of 1..4, product identity, transitive.
std::vector<std::vector<int>> random_s4_transpositions(int count, std::uint64_t seed);
cover::MonodromyDatum d3_from_s4(const std::vector<std::vector<int>>& perms);

struct ProbeRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  cover::MonodromyDatum datum;
  lattice::PolType computed;
  lattice::PolType conjectured;
  bool known_regime = false;
  bool agree = false;
  /// Unset when the spinor cover is disconnected.
  std::optional<bool> mu_surjective, scaling;
};

struct ProbeReport {
  int n = 0;
  long long ds = 0, dl = 0;
  std::vector<ProbeRow> rows;
  std::size_t agreements = 0;
  double agreement_percent() const;
};

/// Trials run on up to `threads` workers; on_row is called in trial order.
ProbeReport conjecture_probe(int n, long long ds, long long dl, std::size_t trials, std::uint64_t seed,
                             unsigned threads = 1, const std::function<void(const ProbeRow&)>& on_row = {});

}  // namespace prymlab::prym
