#pragma once

// Reed-Solomon codes and Guruswami-Sudan list decoding.
//
// An RSSpec stores the maximum message degree w rather than the dimension;
// a code of dimension k has w = k - 1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmprs/bivariate.hpp"
#include "rmprs/galois.hpp"
#include "rmprs/polynomial.hpp"

namespace rmprs {

using Word = std::vector<Elem>;

struct RSSpec {
  FieldPtr field;
  std::size_t w = 0;
  std::vector<Elem> points;

  std::size_t n() const { return points.size(); }
};

inline RSSpec make_rs_spec(FieldPtr field, std::size_t w, std::vector<Elem> points) {
  for (auto p : points) field->check(p);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw InvalidArgument("RS evaluation points must be pairwise distinct");
  if (w >= points.size()) throw InvalidArgument("RS code needs w < n");
  return RSSpec{std::move(field), w, std::move(points)};
}

// RS code evaluated at every field element in encoding order.
inline RSSpec full_rs_spec(const FieldPtr& field, std::size_t w) { return make_rs_spec(field, w, field->elements()); }

struct DecodeEntry {
  Word codeword;
  UniPoly message;
  std::size_t distance = 0;
};

using DecodeList = std::vector<DecodeEntry>;

inline std::size_t hamming(std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw InvalidArgument("hamming: words differ in length");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

inline Word rs_encode(const RSSpec& spec, const UniPoly& f) {
  if (f.field()->id() != spec.field->id()) throw FieldMismatch();
  if (f.degree() > static_cast<int>(spec.w))
    throw InvalidArgument("rs_encode: message degree " + std::to_string(f.degree()) + " exceeds w = " +
                          std::to_string(spec.w));
  Word out(spec.n());
  for (std::size_t i = 0; i < spec.n(); ++i) out[i] = f(spec.points[i]);
  return out;
}

inline std::uint64_t isqrt(std::uint64_t v) {
  std::uint64_t r = 0;
  std::uint64_t bit = std::uint64_t{1} << 62;
  while (bit > v) bit >>= 2;
  while (bit) {
    if (v >= r + bit) {
      v -= r + bit;
      r = (r >> 1) + bit;
    } else {
      r >>= 1;
    }
    bit >>= 2;
  }
  return r;
}

// ceil(n (1 - sqrt(a/n))) = n - floor(sqrt(a n)), computed exactly.
inline long long radius_ceiling(std::uint64_t n, std::uint64_t a) {
  return static_cast<long long>(n) - static_cast<long long>(isqrt(a * n));
}

// Threshold t: all codewords at distance < t are guaranteed to be found.
inline long long gs_radius(const RSSpec& spec) { return radius_ceiling(spec.n(), spec.w); }

// Largest tau for which Guruswami-Sudan is complete: n - 1 - floor(sqrt(w n)).
inline long long gs_max_tau(std::size_t n, std::size_t w) { return radius_ceiling(n, w) - 1; }

// Number of monomials X^i Y^j with i + w j <= D.
inline std::uint64_t weighted_monomial_count(std::uint64_t D, std::uint64_t w) {
  if (w == 0) throw InvalidArgument("weighted monomial count is unbounded for w = 0");
  std::uint64_t total = 0;
  for (std::uint64_t b = 0; b * w <= D; ++b) total += D - w * b + 1;
  return total;
}

struct GsParameters {
  std::uint32_t multiplicity = 1;
  std::uint64_t weighted_degree = 0;

  std::uint64_t constraints(std::size_t n) const {
    return static_cast<std::uint64_t>(n) * multiplicity * (multiplicity + 1) / 2;
  }
};

// Smallest multiplicity s for which some D < s (n - tau) has more weighted
// monomials than the n s (s+1)/2 vanishing conditions; D is the largest such.
inline GsParameters gs_parameters(std::size_t n, std::size_t w, std::size_t tau) {
  if (w == 0) throw InvalidArgument("Guruswami-Sudan parameters need w >= 1");
  if (static_cast<long long>(tau) > gs_max_tau(n, w))
    throw RadiusUnachievable("radius unachievable: tau = " + std::to_string(tau) + " exceeds n - 1 - floor(sqrt(w n)) = " +
                             std::to_string(gs_max_tau(n, w)));
  constexpr std::uint32_t kMaxMultiplicity = 2000;
  for (std::uint32_t s = 1; s <= kMaxMultiplicity; ++s) {
    const std::uint64_t D = static_cast<std::uint64_t>(s) * (n - tau) - 1;
    const std::uint64_t need = static_cast<std::uint64_t>(n) * s * (s + 1) / 2;
    if (weighted_monomial_count(D, w) > need) return GsParameters{s, D};
  }
  throw RadiusUnachievable("radius unachievable: no multiplicity up to 2000 satisfies the interpolation bound");
}

namespace detail {

inline void ensure_binomials(std::vector<std::vector<std::uint32_t>>& table, std::size_t n, std::uint32_t p) {
  if (table.size() > n) return;
  table = binomials_mod_p(std::max(n, 2 * table.size()), p);
}

inline void check_word(const RSSpec& spec, std::span<const Elem> r) {
  if (r.size() != spec.n()) throw InvalidArgument("received word length does not match the code length");
  for (auto s : r) spec.field->check(s);
}

}  // namespace detail

// Nonzero Q with (1,w)-weighted degree <= D vanishing with multiplicity
// >= mult at every (point_i, r_i). Koetter's iterative algorithm: the
// returned Q has minimal weighted degree among all such polynomials of
// Y-degree <= D/w.
inline BiPoly gs_interpolate(const RSSpec& spec, std::span<const Elem> r, std::uint32_t mult, std::uint64_t D) {
  detail::check_word(spec, r);
  if (mult == 0) throw InvalidArgument("multiplicity must be positive");
  if (spec.w == 0) throw InvalidArgument("interpolation needs w >= 1");
  const std::uint64_t constraints = static_cast<std::uint64_t>(spec.n()) * mult * (mult + 1) / 2;
  if (weighted_monomial_count(D, spec.w) <= constraints)
    throw InvalidArgument("interpolation precondition violated: " + std::to_string(weighted_monomial_count(D, spec.w)) +
                          " monomials for " + std::to_string(constraints) + " constraints");
  const Field& F = *spec.field;
  const std::size_t L = D / spec.w;
  std::vector<BiPoly> basis;
  basis.reserve(L + 1);
  for (std::size_t j = 0; j <= L; ++j) basis.push_back(BiPoly::y_power(spec.field, j));
  std::vector<long long> wdeg(L + 1);
  for (std::size_t j = 0; j <= L; ++j) wdeg[j] = static_cast<long long>(spec.w * j);

  std::vector<std::vector<std::uint32_t>> binom;
  detail::ensure_binomials(binom, std::max<std::size_t>(D, L) + 2, F.characteristic());
  std::vector<std::uint32_t> disc(L + 1);

  for (std::size_t pt = 0; pt < spec.n(); ++pt) {
    const std::uint32_t alpha = spec.points[pt].value;
    const std::uint32_t beta = r[pt].value;
    for (std::uint32_t b = 0; b < mult; ++b) {
      const auto yw = BiPoly::hasse_weights(F, b, beta, L + 1, binom);
      for (std::uint32_t a = 0; a + b < mult; ++a) {
        std::size_t max_x = 0;
        for (const auto& g : basis)
          for (const auto& row : g.rows()) max_x = std::max(max_x, row.size());
        detail::ensure_binomials(binom, max_x + 1, F.characteristic());
        const auto xw = BiPoly::hasse_weights(F, a, alpha, max_x, binom);

        std::size_t star = SIZE_MAX;
        for (std::size_t j = 0; j <= L; ++j) {
          disc[j] = basis[j].hasse(xw, yw);
          if (disc[j] != 0 && (star == SIZE_MAX || wdeg[j] < wdeg[star])) star = j;
        }
        if (star == SIZE_MAX) continue;
        const std::uint32_t inv_star = F.raw_inv(disc[star]);
        for (std::size_t j = 0; j <= L; ++j) {
          if (j == star || disc[j] == 0) continue;
          basis[j].combine(1, F.raw_mul(disc[j], inv_star), basis[star]);
        }
        basis[star].mul_x_minus(alpha);
        wdeg[star] += 1;
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j <= L; ++j)
    if (basis[j].weighted_degree(spec.w) < basis[best].weighted_degree(spec.w)) best = j;
  if (basis[best].is_zero() || basis[best].weighted_degree(spec.w) > static_cast<long long>(D))
    throw InternalError("interpolation produced no polynomial within the weighted-degree budget");
  return basis[best];
}

// The same interpolation problem solved directly: Gaussian elimination on
// the homogeneous linear system over all monomials of weighted degree <= D.
inline BiPoly gs_interpolate_dense(const RSSpec& spec, std::span<const Elem> r, std::uint32_t mult, std::uint64_t D) {
  detail::check_word(spec, r);
  if (spec.w == 0) throw InvalidArgument("interpolation needs w >= 1");
  const Field& F = *spec.field;
  std::vector<std::pair<std::size_t, std::size_t>> monos;
  for (std::size_t j = 0; j * spec.w <= D; ++j)
    for (std::size_t i = 0; i + j * spec.w <= D; ++i) monos.emplace_back(i, j);
  const std::uint64_t constraints = static_cast<std::uint64_t>(spec.n()) * mult * (mult + 1) / 2;
  if (monos.size() <= constraints) throw InvalidArgument("interpolation precondition violated");
  const auto binom = binomials_mod_p(D + 1, F.characteristic());

  std::vector<std::vector<std::uint32_t>> rows;
  for (std::size_t pt = 0; pt < spec.n(); ++pt)
    for (std::uint32_t b = 0; b < mult; ++b)
      for (std::uint32_t a = 0; a + b < mult; ++a) {
        std::vector<std::uint32_t> row(monos.size(), 0);
        for (std::size_t k = 0; k < monos.size(); ++k) {
          const auto [i, j] = monos[k];
          if (i < a || j < b) continue;
          const std::uint32_t c = F.raw_mul(binom[i][a], binom[j][b]);
          if (!c) continue;
          row[k] = F.raw_mul(c, F.raw_mul(F.raw_pow(spec.points[pt].value, i - a), F.raw_pow(r[pt].value, j - b)));
        }
        rows.push_back(std::move(row));
      }

  // Reduced row echelon form; the first free column gives a null vector.
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  std::vector<bool> is_pivot(monos.size(), false);
  for (std::size_t col = 0; col < monos.size() && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    const std::uint32_t inv = F.raw_inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = F.raw_mul(v, inv);
    for (std::size_t rr = 0; rr < rows.size(); ++rr) {
      if (rr == rank || rows[rr][col] == 0) continue;
      const std::uint32_t f = F.raw_neg(rows[rr][col]);
      for (std::size_t k = col; k < monos.size(); ++k)
        if (rows[rank][k]) rows[rr][k] = F.raw_add(rows[rr][k], F.raw_mul(f, rows[rank][k]));
    }
    pivot_col.push_back(col);
    is_pivot[col] = true;
    ++rank;
  }
  std::size_t free_col = 0;
  while (free_col < monos.size() && is_pivot[free_col]) ++free_col;
  if (free_col == monos.size()) throw InternalError("interpolation system has only the trivial solution");
  std::vector<std::uint32_t> sol(monos.size(), 0);
  sol[free_col] = 1;
  for (std::size_t k = 0; k < rank; ++k) sol[pivot_col[k]] = F.raw_neg(rows[k][free_col]);

  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    if (!sol[k]) continue;
    const auto [i, j] = monos[k];
    if (out.size() <= j) out.resize(j + 1);
    if (out[j].size() <= i) out[j].resize(i + 1, 0);
    out[j][i] = sol[k];
  }
  return BiPoly(spec.field, std::move(out));
}

// Every f with deg f <= w and Q(X, f(X)) = 0, each exactly once, via
// Roth-Ruckenstein coefficient-by-coefficient reconstruction.
inline std::vector<UniPoly> rr_roots(const BiPoly& Q, std::size_t w) {
  if (Q.is_zero()) throw InvalidArgument("rr_roots: Q must be nonzero");
  const FieldPtr& field = Q.field();
  const Field& F = *field;
  std::vector<UniPoly> out;
  std::vector<Elem> prefix(w + 1, F.zero());
  const auto elements = F.elements();

  auto rec = [&](auto&& self, const BiPoly& cur, std::size_t depth) -> void {
    const BiPoly reduced = cur.divide_out_x();
    const UniPoly r0 = reduced.at_x_zero();
    for (Elem gamma : elements) {
      if (r0(gamma).value != 0) continue;
      prefix[depth] = gamma;
      if (depth == w) {
        UniPoly f(field, prefix);
        if (Q.substitute(f).is_zero()) out.push_back(std::move(f));
      } else {
        self(self, reduced.shift_substitute(gamma.value), depth + 1);
      }
    }
    prefix[depth] = F.zero();
  };
  rec(rec, Q, 0);
  return out;
}

namespace detail {

inline bool lex_less(std::span<const Elem> a, std::span<const Elem> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Elem x, Elem y) { return x.value < y.value; });
}

inline void sort_decode_list(DecodeList& list) {
  std::sort(list.begin(), list.end(), [](const DecodeEntry& x, const DecodeEntry& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    return lex_less(x.codeword, y.codeword);
  });
}

}  // namespace detail

// All codewords within Hamming distance tau of r, sorted by distance then
// lexicographically. Complete whenever tau <= n - 1 - floor(sqrt(w n)); larger
// tau raises RadiusUnachievable.
inline DecodeList gs_list_decode(const RSSpec& spec, std::span<const Elem> r, std::size_t tau) {
  detail::check_word(spec, r);
  const FieldPtr& field = spec.field;
  DecodeList list;
  if (spec.w == 0) {
    // Constant code: counting symbol frequencies is exact.
    if (static_cast<long long>(tau) > gs_max_tau(spec.n(), 0))
      throw RadiusUnachievable("radius unachievable: tau must be below n for a constant code");
    std::vector<std::size_t> freq(field->order(), 0);
    for (auto s : r) ++freq[s.value];
    for (std::uint64_t v = 0; v < field->order(); ++v) {
      const std::size_t d = spec.n() - freq[v];
      if (d <= tau) {
        const Elem c = field->elem(v);
        list.push_back({Word(spec.n(), c), UniPoly::constant(field, c), d});
      }
    }
    detail::sort_decode_list(list);
    return list;
  }
  const GsParameters params = gs_parameters(spec.n(), spec.w, tau);
  const BiPoly Q = gs_interpolate(spec, r, params.multiplicity, params.weighted_degree);
  for (auto& f : rr_roots(Q, spec.w)) {
    Word c = rs_encode(spec, f);
    const std::size_t d = hamming(c, r);
    if (d <= tau) list.push_back({std::move(c), std::move(f), d});
  }
  detail::sort_decode_list(list);
  return list;
}

// Closest entry of the tau-list, or nullopt when the list is empty.
inline std::optional<DecodeEntry> rs_nearest(const RSSpec& spec, std::span<const Elem> r, std::size_t tau) {
  DecodeList list = gs_list_decode(spec, r, tau);
  if (list.empty()) return std::nullopt;
  return std::move(list.front());
}

}  // namespace rmprs
