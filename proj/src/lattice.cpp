#include "prymlab/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace prymlab::lattice {

namespace {

// Floor division, so that remainders lie in [0, |b|).
Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Round-to-nearest quotient; keeps remainders small during elimination.
Int near_div(const Int& a, const Int& b) {
  Int q = floor_div(a, b);
  Int r = a - q * b;
  Int twice = 2 * r;
  if (b > 0 ? twice > b : twice < b) q += 1;
  return q;
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm out{IntMatrix::identity(rows), m, IntMatrix::identity(cols), 0, {}};
  IntMatrix& a = out.D;
  IntMatrix& u = out.U;
  IntMatrix& v = out.V;

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // pivot: smallest nonzero magnitude in the trailing block
      bool found = false;
      std::size_t pr = t, pc = t;
      Int best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const Int& x = a(i, j);
          if (sgn(x) == 0) continue;
          if (!found || abs(x) < best) {
            best = abs(x);
            pr = i;
            pc = j;
            found = true;
          }
        }
      if (!found) break;
      a.swap_rows(t, pr);
      u.swap_rows(t, pr);
      a.swap_cols(t, pc);
      v.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        Int q = near_div(a(i, t), a(t, t));
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (sgn(a(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        Int q = near_div(a(t, j), a(t, t));
        a.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (sgn(a(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the trailing block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            a.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (sgn(a(t, t)) == 0) break;
    if (sgn(a(t, t)) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
    out.divisors.push_back(a(t, t));
  }
  out.rank = out.divisors.size();
  return out;
}

ColumnEchelon column_echelon(const IntMatrix& m) {
  ColumnEchelon out{m, IntMatrix::identity(m.cols()), 0, {}};
  IntMatrix& h = out.H;
  IntMatrix& v = out.V;
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t i = 0; i < m.rows() && r < cols; ++i) {
    for (;;) {
      bool found = false;
      std::size_t pc = r;
      Int best;
      for (std::size_t j = r; j < cols; ++j) {
        const Int& x = h(i, j);
        if (sgn(x) == 0) continue;
        if (!found || abs(x) < best) {
          best = abs(x);
          pc = j;
          found = true;
        }
      }
      if (!found) break;
      h.swap_cols(r, pc);
      v.swap_cols(r, pc);
      bool clean = true;
      for (std::size_t j = r + 1; j < cols; ++j) {
        if (sgn(h(i, j)) == 0) continue;
        Int q = near_div(h(i, j), h(i, r));
        h.add_col_multiple(j, r, -q);
        v.add_col_multiple(j, r, -q);
        if (sgn(h(i, j)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= cols || sgn(h(i, r)) == 0) continue;
    if (sgn(h(i, r)) < 0) {
      h.negate_col(r);
      v.negate_col(r);
    }
    // reduce earlier pivot columns into [0, pivot)
    for (std::size_t l = 0; l < r; ++l) {
      Int q = floor_div(h(i, l), h(i, r));
      if (sgn(q) == 0) continue;
      h.add_col_multiple(l, r, -q);
      v.add_col_multiple(l, r, -q);
    }
    out.pivot_rows.push_back(i);
    ++r;
  }
  out.rank = r;
  return out;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix image(const IntMatrix& m) {
  auto ce = column_echelon(m);
  return ce.H.columns(0, ce.rank);
}

IntMatrix kernel(const IntMatrix& m) {
  auto ce = column_echelon(m);
  return ce.V.columns(ce.rank, m.cols() - ce.rank);
}

IntMatrix saturate(const IntMatrix& basis) {
  const std::size_t ambient = basis.rows();
  if (basis.cols() == 0) return IntMatrix(ambient, 0);
  // annihilator of the span, then its annihilator
  IntMatrix left = kernel(basis.transpose());
  if (left.cols() == 0) return IntMatrix::identity(ambient);
  return canonical_basis(kernel(left.transpose()));
}

IntMatrix intersect(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DomainError("intersect: ambient rank mismatch");
  if (a.cols() == 0 || b.cols() == 0) return IntMatrix(a.rows(), 0);
  IntMatrix k = kernel(hstack(a, (-1L) * b));
  return image(a * k.block(0, 0, a.cols(), k.cols()));
}

IntMatrix sum(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DomainError("sum: ambient rank mismatch");
  return image(hstack(a, b));
}

std::optional<IntMatrix> solve(const IntMatrix& basis, const IntMatrix& v) {
  if (basis.rows() != v.rows()) throw DomainError("solve: ambient rank mismatch");
  auto ce = column_echelon(basis);
  if (ce.rank != basis.cols()) throw DomainError("solve: basis is not of full column rank");
  const std::size_t r = ce.rank;
  IntMatrix y(r, v.cols());
  for (std::size_t c = 0; c < v.cols(); ++c) {
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t row = ce.pivot_rows[k];
      Int acc = v(row, c);
      for (std::size_t l = 0; l < k; ++l) acc -= ce.H(row, l) * y(l, c);
      if (!mpz_divisible_p(acc.get_mpz_t(), ce.H(row, k).get_mpz_t())) return std::nullopt;
      mpz_divexact(y(k, c).get_mpz_t(), acc.get_mpz_t(), ce.H(row, k).get_mpz_t());
    }
  }
  if (ce.H.columns(0, r) * y != v) return std::nullopt;
  return ce.V.columns(0, r) * y;
}

bool contains(const IntMatrix& outer, const IntMatrix& inner) {
  if (inner.cols() == 0) return true;
  if (outer.cols() == 0) return inner.is_zero();
  return solve(outer, inner).has_value();
}

IntMatrix canonical_basis(const IntMatrix& basis) { return image(basis); }

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return canonical_basis(a) == canonical_basis(b);
}

Int saturation_index(const IntMatrix& basis) {
  Int index = 1;
  for (const auto& d : snf(basis).divisors) index *= d;
  return index;
}

std::string PolType::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < chain.size(); ++i) os << (i ? "," : "") << chain[i];
  os << ')';
  return os.str();
}

bool is_alternating(const IntMatrix& g) {
  if (g.rows() != g.cols()) return false;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (sgn(g(i, i)) != 0) return false;
    for (std::size_t j = i + 1; j < g.cols(); ++j)
      if (g(i, j) != -g(j, i)) return false;
  }
  return true;
}

PolarizedLattice saturate(const PolarizedLattice& sub) { return {sub.gram, saturate(sub.basis)}; }

namespace {

PolType pair_divisors(const std::vector<Int>& divisors) {
  if (divisors.size() % 2 != 0)
    throw InternalError("alternating form with an odd number of elementary divisors");
  PolType t;
  for (std::size_t i = 0; i < divisors.size(); i += 2) {
    if (divisors[i] != divisors[i + 1])
      throw InternalError("elementary divisors of an alternating form are not paired");
    if (!divisors[i].fits_slong_p()) throw DomainError("polarization divisor out of range");
    t.chain.push_back(divisors[i].get_si());
  }
  return t;
}

}  // namespace

PolType ptype_of_gram(const IntMatrix& alternating) {
  if (!is_alternating(alternating)) throw DomainError("ptype: form is not alternating");
  const std::size_t n = alternating.rows();
  if (n % 2 != 0) throw DegenerateForm("ptype: odd rank " + std::to_string(n), kernel(alternating));
  auto s = snf(alternating);
  if (s.rank < n) {
    throw DegenerateForm("ptype: degenerate form, radical of rank " + std::to_string(n - s.rank),
                         kernel(alternating));
  }
  return pair_divisors(s.divisors);
}

PolType ptype(const PolarizedLattice& sub) {
  if (sub.basis.rows() != sub.gram.rows()) throw DomainError("ptype: ambient rank mismatch");
  IntMatrix r = sub.restricted_gram();
  try {
    return ptype_of_gram(r);
  } catch (const DegenerateForm& e) {
    throw DegenerateForm(e.what(), sub.basis * e.radical());
  }
}

bool is_valid_chain(const PolType& t) {
  for (std::size_t i = 0; i < t.chain.size(); ++i) {
    if (t.chain[i] <= 0) return false;
    if (i > 0 && t.chain[i] % t.chain[i - 1] != 0) return false;
  }
  return true;
}

PolType dual_type(const PolType& t) {
  if (!is_valid_chain(t)) throw DomainError("dual_type: not a divisibility chain " + t.to_string());
  const std::size_t p = t.chain.size();
  if (p == 0) return t;
  const long long top = t.chain.front() * t.chain.back();
  PolType d;
  for (std::size_t i = 0; i < p; ++i) d.chain.push_back(top / t.chain[p - 1 - i]);
  return d;
}

PolType scale_type(const PolType& t, long long numerator, long long denominator) {
  if (denominator == 0) throw DomainError("scale_type: zero denominator");
  PolType s;
  for (long long d : t.chain) {
    long long x = d * numerator;
    if (x % denominator != 0) throw DomainError("scale_type: non-integral entry");
    s.chain.push_back(x / denominator);
  }
  return s;
}

}  // namespace prymlab::lattice
