#pragma once

// q-ary Reed-Muller codes RM_q(l, m, n) and the list decoder that embeds
// them in a Reed-Solomon code over GF(q^m): with beta_i = psi(alpha_i), every
// RM codeword is the evaluation of a univariate f of degree <= l q^(m-1) at
// the beta_i, so Guruswami-Sudan over GF(q^m) followed by a subfield check
// and a membership test recovers the RM list.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rmprs/extension.hpp"
#include "rmprs/polynomial.hpp"
#include "rmprs/rs_codec.hpp"

namespace rmprs {

// Solves E c = v for the evaluation matrix E of a monomial basis at a point
// set. Built once per code: an independent row subset P and pivot columns K
// with E[P,K] invertible, so a consistent v has the solution
// c_K = E[P,K]^-1 v_P.
class MembershipSolver {
 public:
  MembershipSolver(const FieldPtr& field, std::vector<Exponents> monomials, const std::vector<std::vector<Elem>>& points)
      : field_(field), monomials_(std::move(monomials)) {
    const Field& F = *field_;
    const std::size_t M = monomials_.size();
    eval_.assign(points.size(), std::vector<std::uint32_t>(M, 0));
    for (std::size_t r = 0; r < points.size(); ++r)
      for (std::size_t c = 0; c < M; ++c) {
        std::uint32_t v = 1;
        for (std::size_t j = 0; j < monomials_[c].size(); ++j)
          v = F.raw_mul(v, F.raw_pow(points[r][j].value, monomials_[c][j]));
        eval_[r][c] = v;
      }

    // Row-by-row echelon basis; remembers which original rows were independent.
    std::vector<std::vector<std::uint32_t>> echelon;
    std::vector<std::size_t> echelon_pivot;
    for (std::size_t r = 0; r < points.size() && echelon.size() < M; ++r) {
      auto row = eval_[r];
      for (std::size_t k = 0; k < echelon.size(); ++k) {
        const std::uint32_t f = row[echelon_pivot[k]];
        if (!f) continue;
        const std::uint32_t nf = F.raw_neg(f);
        for (std::size_t c = 0; c < M; ++c)
          if (echelon[k][c]) row[c] = F.raw_add(row[c], F.raw_mul(nf, echelon[k][c]));
      }
      std::size_t piv = 0;
      while (piv < M && row[piv] == 0) ++piv;
      if (piv == M) continue;
      const std::uint32_t inv = F.raw_inv(row[piv]);
      for (auto& x : row) x = F.raw_mul(x, inv);
      // Keep the basis fully reduced so later rows eliminate in one pass.
      for (auto& e : echelon) {
        const std::uint32_t f = e[piv];
        if (!f) continue;
        const std::uint32_t nf = F.raw_neg(f);
        for (std::size_t c = 0; c < M; ++c)
          if (row[c]) e[c] = F.raw_add(e[c], F.raw_mul(nf, row[c]));
      }
      echelon.push_back(std::move(row));
      echelon_pivot.push_back(piv);
      rows_.push_back(r);
    }
    cols_ = echelon_pivot;
    Matrix sub(rows_.size(), std::vector<Elem>(cols_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t k = 0; k < cols_.size(); ++k) sub[i][k] = Elem{eval_[rows_[i]][cols_[k]], F.id()};
    auto inv = invert_matrix(F, sub);
    if (!inv) throw InternalError("membership solver: pivot submatrix is singular");
    inverse_ = std::move(*inv);
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Exponents>& monomials() const { return monomials_; }

  std::optional<MultiPoly> solve(std::span<const Elem> v, std::size_t vars) const {
    const Field& F = *field_;
    if (v.size() != eval_.size()) throw InvalidArgument("membership: word length mismatch");
    for (auto s : v) F.check(s);
    std::vector<std::uint32_t> c(monomials_.size(), 0);
    for (std::size_t k = 0; k < cols_.size(); ++k) {
      std::uint32_t acc = 0;
      for (std::size_t i = 0; i < rows_.size(); ++i)
        acc = F.raw_add(acc, F.raw_mul(inverse_[k][i].value, v[rows_[i]].value));
      c[cols_[k]] = acc;
    }
    for (std::size_t r = 0; r < eval_.size(); ++r) {
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < cols_.size(); ++k) acc = F.raw_add(acc, F.raw_mul(eval_[r][cols_[k]], c[cols_[k]]));
      if (acc != v[r].value) return std::nullopt;
    }
    MultiPoly phi(field_, vars);
    for (std::size_t k = 0; k < monomials_.size(); ++k)
      if (c[k]) phi.add_term(monomials_[k], Elem{c[k], F.id()});
    return phi;
  }

 private:
  FieldPtr field_;
  std::vector<Exponents> monomials_;
  std::vector<std::vector<std::uint32_t>> eval_;
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
  Matrix inverse_;
};

struct RMSpec {
  FieldPtr base;
  std::uint32_t l = 0;
  std::uint32_t m = 0;
  std::vector<std::vector<Elem>> points;
  ExtensionPtr em;
  std::vector<Elem> lifted_points;
  bool full_grid = false;
  std::shared_ptr<const MembershipSolver> membership;

  std::size_t n() const { return points.size(); }
  std::uint64_t q() const { return base->order(); }
  // Degree bound w = l q^(m-1) of the embedding Reed-Solomon code.
  std::uint64_t rs_degree() const {
    std::uint64_t w = l;
    for (std::uint32_t i = 1; i < m; ++i) w *= q();
    return w;
  }
};

// Reduced monomial basis {x^i : sum i <= l, i_j <= q-1}.
inline std::vector<Exponents> rm_monomials(std::uint64_t q, std::uint32_t m, std::uint32_t l) {
  return monomials_up_to(m, l, static_cast<std::uint32_t>(q - 1));
}

// The first n points of GF(q)^m in lexicographic order (first coordinate
// most significant).
inline std::vector<std::vector<Elem>> grid_points(const Field& field, std::uint32_t m, std::size_t n) {
  std::vector<std::vector<Elem>> out;
  out.reserve(n);
  if (n == 0) return out;
  for_each_grid_point(field, m, [&](std::span<const Elem> x) {
    if (out.size() < n) out.emplace_back(x.begin(), x.end());
  });
  return out;
}

inline RMSpec make_rm_spec(FieldPtr base, std::uint32_t l, std::uint32_t m, std::size_t n,
                           std::optional<std::vector<std::vector<Elem>>> points = std::nullopt,
                           BasisKind basis = BasisKind::polynomial) {
  const std::uint64_t q = base->order();
  if (m == 0) throw InvalidArgument("RM code needs m >= 1");
  if (l > q)
    throw InvalidArgument("RM code needs l <= q (l = " + std::to_string(l) + ", q = " + std::to_string(q) +
                          "); the embedding degree bound does not hold beyond it");
  std::uint64_t grid = 1;
  for (std::uint32_t i = 0; i < m; ++i) grid *= q;
  if (n == 0 || n > grid) throw InvalidArgument("RM code length must satisfy 1 <= n <= q^m");

  RMSpec spec;
  spec.base = base;
  spec.l = l;
  spec.m = m;
  if (points) {
    if (points->size() != n) throw InvalidArgument("explicit point list must have n entries");
    for (const auto& p : *points) {
      if (p.size() != m) throw InvalidArgument("each point must have m coordinates");
      for (auto c : p) base->check(c);
    }
    spec.points = std::move(*points);
    auto sorted = spec.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("RM evaluation points must be pairwise distinct");
  } else {
    spec.points = grid_points(*base, m, n);
  }
  spec.full_grid = n == grid && spec.points == grid_points(*base, m, n);
  spec.em = make_extension(base, m, basis);
  for (const auto& p : spec.points) spec.lifted_points.push_back(spec.em->lift_point(p));
  spec.membership = std::make_shared<const MembershipSolver>(base, rm_monomials(q, m, l), spec.points);
  return spec;
}

inline Word rm_encode(const RMSpec& spec, const MultiPoly& phi) {
  if (phi.field()->id() != spec.base->id()) throw FieldMismatch();
  if (phi.vars() != spec.m) throw InvalidArgument("rm_encode: message has the wrong number of variables");
  if (phi.total_degree() > static_cast<int>(spec.l))
    throw InvalidArgument("rm_encode: total degree " + std::to_string(phi.total_degree()) + " exceeds l = " +
                          std::to_string(spec.l));
  Word out(spec.n());
  for (std::size_t i = 0; i < spec.n(); ++i) out[i] = phi(spec.points[i]);
  return out;
}

// A reduced polynomial of total degree <= l reproducing v, or nullopt.
inline std::optional<MultiPoly> rm_membership(const RMSpec& spec, std::span<const Elem> v) {
  return spec.membership->solve(v, spec.m);
}

// The base-field word when every symbol is fixed by Frobenius, else nullopt.
inline std::optional<Word> subfield_check(const ExtensionMap& em, std::span<const Elem> c) {
  Word out;
  out.reserve(c.size());
  for (auto s : c) {
    if (!em.in_subfield(s)) return std::nullopt;
    out.push_back(*em.restrict(s));
  }
  return out;
}

inline Word embed_word(const ExtensionMap& em, std::span<const Elem> r) {
  Word out;
  out.reserve(r.size());
  for (auto s : r) out.push_back(em.embed(s));
  return out;
}

// t = ceil(n (1 - sqrt(l q^(m-1) / n))).
inline long long rm_pw_threshold(const RMSpec& spec) { return radius_ceiling(spec.n(), spec.rs_degree()); }

struct RMDecodeEntry {
  Word codeword;
  MultiPoly message;
  std::size_t distance = 0;
};

// Every RM codeword at distance < t from r, with its reduced message.
inline std::vector<RMDecodeEntry> rm_list_decode_pw(const RMSpec& spec, std::span<const Elem> r) {
  if (r.size() != spec.n()) throw InvalidArgument("received word length does not match n");
  for (auto s : r) spec.base->check(s);
  const long long t = rm_pw_threshold(spec);
  if (t <= 0)
    throw RadiusUnachievable("radius unachievable: t = " + std::to_string(t) + " for l q^(m-1) = " +
                             std::to_string(spec.rs_degree()) + " >= n");
  const RSSpec rs{spec.em->ext(), static_cast<std::size_t>(spec.rs_degree()), spec.lifted_points};
  const DecodeList big = gs_list_decode(rs, embed_word(*spec.em, r), static_cast<std::size_t>(t - 1));
  std::vector<RMDecodeEntry> out;
  for (const auto& entry : big) {
    auto base_word = subfield_check(*spec.em, entry.codeword);
    if (!base_word) continue;
    auto phi = rm_membership(spec, *base_word);
    if (!phi) continue;
    out.push_back({std::move(*base_word), std::move(*phi), entry.distance});
  }
  std::sort(out.begin(), out.end(), [](const RMDecodeEntry& a, const RMDecodeEntry& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return detail::lex_less(a.codeword, b.codeword);
  });
  return out;
}

namespace detail {

// Converts values on the full grid (row-major, first axis slowest) into
// coefficients of the unique reduced interpolating polynomial, one axis at
// a time.
inline std::vector<Elem> tensor_interpolate(const FieldPtr& field, std::uint32_t m, std::vector<Elem> values) {
  const std::uint64_t q = field->order();
  const auto elements = field->elements();
  std::vector<std::pair<Elem, Elem>> pts(q);
  std::size_t stride = 1;
  for (std::uint32_t axis = m; axis-- > 0;) {
    const std::size_t block = stride * q;
    for (std::size_t start = 0; start < values.size(); start += block)
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::uint64_t t = 0; t < q; ++t) pts[t] = {elements[t], values[start + off + t * stride]};
        const UniPoly f = lagrange_interpolate(field, pts);
        for (std::uint64_t t = 0; t < q; ++t) values[start + off + t * stride] = f.coeff(t);
      }
    stride = block;
  }
  return values;
}

}  // namespace detail

// Reduced message polynomial of a codeword. Full grids use tensor Lagrange
// interpolation; punctured codes go through the membership solver.
inline MultiPoly rm_message_recover(const RMSpec& spec, std::span<const Elem> c) {
  if (c.size() != spec.n()) throw InvalidArgument("word length does not match n");
  for (auto s : c) spec.base->check(s);
  if (!spec.full_grid) {
    auto phi = rm_membership(spec, c);
    if (!phi) throw NotACodeword("word is not a codeword of the RM code");
    return std::move(*phi);
  }
  const auto coeffs = detail::tensor_interpolate(spec.base, spec.m, Word(c.begin(), c.end()));
  MultiPoly phi(spec.base, spec.m);
  std::size_t idx = 0;
  for_each_grid_point(*spec.base, spec.m, [&](std::span<const Elem> x) {
    Exponents e(spec.m);
    for (std::uint32_t j = 0; j < spec.m; ++j) e[j] = x[j].value;
    phi.add_term(e, coeffs[idx++]);
  });
  if (phi.total_degree() > static_cast<int>(spec.l)) throw NotACodeword("word is not a codeword of the RM code");
  return phi;
}

}  // namespace rmprs
