#pragma once

// The tower GF(q) < GF(q^m) and the coordinate isomorphism GF(q)^m -> GF(q^m).
//
// Given a basis a_1..a_m of GF(q^m) over GF(q), a point x maps to
// X = sum_j a_j x_j. Raising to q-powers is GF(q)-linear, so
//   [X, X^q, ..., X^(q^(m-1))]^T = A x,   A[i][j] = a_j^(q^i),
// and x = A^-1 [X, X^q, ...]^T. Reading off row j of A^-1 gives the
// coordinate polynomial mu_j(X) = sum_i Ainv[j][i] X^(q^i) with
// mu_j(psi(x)) = x_j.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmprs/galois.hpp"
#include "rmprs/polynomial.hpp"

namespace rmprs {

enum class BasisKind { polynomial, normal, explicit_list };

using Matrix = std::vector<std::vector<Elem>>;

// Inverse of a square matrix over `field`, or nullopt when singular.
inline std::optional<Matrix> invert_matrix(const Field& field, Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Elem>(n, field.zero()));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = field.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].value == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Elem s = field.inv(a[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = field.mul(a[col][j], s);
      inv[col][j] = field.mul(inv[col][j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].value == 0) continue;
      const Elem factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = field.sub(a[r][j], field.mul(factor, a[col][j]));
        inv[r][j] = field.sub(inv[r][j], field.mul(factor, inv[col][j]));
      }
    }
  }
  return inv;
}

inline Elem determinant(const Field& field, Matrix a) {
  const std::size_t n = a.size();
  Elem det = field.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].value == 0) ++pivot;
    if (pivot == n) return field.zero();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = field.neg(det);
    }
    det = field.mul(det, a[col][col]);
    const Elem s = field.inv(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Elem factor = field.mul(a[r][col], s);
      for (std::size_t j = col; j < n; ++j) a[r][j] = field.sub(a[r][j], field.mul(factor, a[col][j]));
    }
  }
  return det;
}

class ExtensionMap;
using ExtensionPtr = std::shared_ptr<const ExtensionMap>;

class ExtensionMap {
 public:
  // GF(q^m) over `base`. The extension field is GF(p^(e*m)) with its default
  // modulus; explicit_basis is required iff kind == explicit_list.
  static ExtensionPtr make(FieldPtr base, std::uint32_t m, BasisKind kind = BasisKind::polynomial,
                           std::span<const Elem> explicit_basis = {}) {
    if (m == 0) throw InvalidArgument("extension degree m must be positive");
    auto ext = make_field(base->characteristic(), base->degree() * m);
    return make(std::move(base), std::move(ext), m, kind, explicit_basis);
  }

  // Same, over a caller-supplied extension field of order q^m.
  static ExtensionPtr make(FieldPtr base, FieldPtr ext, std::uint32_t m, BasisKind kind,
                           std::span<const Elem> explicit_basis = {}) {
    return ExtensionPtr(new ExtensionMap(std::move(base), std::move(ext), m, kind, explicit_basis));
  }

  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  std::uint32_t m() const { return m_; }
  std::uint64_t q() const { return base_->order(); }
  const std::vector<Elem>& basis() const { return basis_; }
  const Matrix& matrix() const { return a_; }
  const Matrix& matrix_inverse() const { return a_inv_; }
  const std::vector<UniPoly>& mu() const { return mu_; }

  Elem embed(Elem c) const {
    base_->check(c);
    return Elem{embed_table_[c.value], ext_->id()};
  }

  // Inverse of embed on the image subfield.
  std::optional<Elem> restrict(Elem x) const {
    ext_->check(x);
    const std::uint32_t v = restrict_table_[x.value];
    if (v == kNotInSubfield) return std::nullopt;
    return Elem{v, base_->id()};
  }

  // Subfield membership via the Frobenius fixed-point test X^q = X.
  bool in_subfield(Elem x) const { return frobenius(*ext_, x, 1, q()) == x; }

  Elem lift_point(std::span<const Elem> x) const {
    if (x.size() != m_) throw InvalidArgument("lift_point: expected a vector of length m");
    Elem acc = ext_->zero();
    for (std::uint32_t j = 0; j < m_; ++j) acc = ext_->add(acc, ext_->mul(basis_[j], embed(x[j])));
    return acc;
  }

  std::vector<Elem> unlift_point(Elem x) const {
    ext_->check(x);
    std::vector<Elem> powers(m_);
    powers[0] = x;
    for (std::uint32_t i = 1; i < m_; ++i) powers[i] = ext_->pow(powers[i - 1], q());
    std::vector<Elem> out(m_);
    for (std::uint32_t j = 0; j < m_; ++j) {
      Elem acc = ext_->zero();
      for (std::uint32_t i = 0; i < m_; ++i) acc = ext_->add(acc, ext_->mul(a_inv_[j][i], powers[i]));
      auto b = restrict(acc);
      if (!b) throw InternalError("unlift_point: coordinate outside the base subfield; extension map corrupted");
      out[j] = *b;
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kNotInSubfield = 0xFFFFFFFFu;

  ExtensionMap(FieldPtr base, FieldPtr ext, std::uint32_t m, BasisKind kind, std::span<const Elem> explicit_basis)
      : base_(std::move(base)), ext_(std::move(ext)), m_(m) {
    std::uint64_t expect = 1;
    for (std::uint32_t i = 0; i < m_; ++i) expect *= base_->order();
    if (ext_->characteristic() != base_->characteristic() || ext_->order() != expect)
      throw InvalidArgument("extension field must have order q^m");
    build_embedding();

    switch (kind) {
      case BasisKind::polynomial: {
        const Elem xi = ext_->primitive();
        Elem cur = ext_->one();
        for (std::uint32_t i = 0; i < m_; ++i) {
          basis_.push_back(cur);
          cur = ext_->mul(cur, xi);
        }
        break;
      }
      case BasisKind::normal:
        basis_ = find_normal_basis();
        break;
      case BasisKind::explicit_list:
        if (explicit_basis.size() != m_) throw InvalidArgument("explicit basis must have exactly m elements");
        for (auto b : explicit_basis) ext_->check(b);
        basis_.assign(explicit_basis.begin(), explicit_basis.end());
        break;
    }

    a_ = frobenius_matrix(basis_);
    auto inv = invert_matrix(*ext_, a_);
    if (!inv) throw SingularBasis("basis is linearly dependent over the base field: det(A) = 0");
    a_inv_ = std::move(*inv);

    for (std::uint32_t j = 0; j < m_; ++j) {
      std::vector<Elem> coeffs;
      std::uint64_t deg = 1;
      for (std::uint32_t i = 0; i < m_; ++i) {
        if (coeffs.size() < deg + 1) coeffs.resize(deg + 1, ext_->zero());
        coeffs[deg] = a_inv_[j][i];
        deg *= q();
      }
      mu_.emplace_back(ext_, std::move(coeffs));
    }
  }

  Matrix frobenius_matrix(const std::vector<Elem>& basis) const {
    Matrix a(m_, std::vector<Elem>(m_));
    for (std::uint32_t j = 0; j < m_; ++j) {
      Elem cur = basis[j];
      for (std::uint32_t i = 0; i < m_; ++i) {
        a[i][j] = cur;
        cur = ext_->pow(cur, q());
      }
    }
    return a;
  }

  // Maps the base generator to the smallest root of the base modulus inside
  // the extension; prime bases embed as the identity on encodings.
  void build_embedding() {
    const std::uint64_t qb = base_->order();
    const std::uint32_t p = base_->characteristic();
    embed_table_.assign(qb, 0);
    Elem theta = ext_->zero();
    if (base_->degree() > 1) {
      const auto& mod = base_->modulus();
      bool found = false;
      for (Elem cand : ext_->elements()) {
        Elem acc = ext_->zero();
        for (std::size_t i = mod.size(); i-- > 0;)
          acc = ext_->add(ext_->mul(acc, cand), ext_->from_int(mod[i]));
        if (acc.value == 0) {
          theta = cand;
          found = true;
          break;
        }
      }
      if (!found) throw InternalError("base modulus has no root in the extension field");
    }
    for (std::uint64_t c = 0; c < qb; ++c) {
      if (base_->degree() == 1) {
        embed_table_[c] = static_cast<std::uint32_t>(c);
        continue;
      }
      Elem acc = ext_->zero(), power = ext_->one();
      std::uint64_t v = c;
      for (std::uint32_t i = 0; i < base_->degree(); ++i) {
        acc = ext_->add(acc, ext_->mul(ext_->from_int(static_cast<std::int64_t>(v % p)), power));
        power = ext_->mul(power, theta);
        v /= p;
      }
      embed_table_[c] = acc.value;
    }
    restrict_table_.assign(ext_->order(), kNotInSubfield);
    for (std::uint64_t c = 0; c < qb; ++c) {
      if (restrict_table_[embed_table_[c]] != kNotInSubfield)
        throw InternalError("embedding of the base field is not injective");
      restrict_table_[embed_table_[c]] = static_cast<std::uint32_t>(c);
    }
  }

  // {z, z^q, ..., z^(q^(m-1))} for the smallest primitive z giving a
  // nonsingular Frobenius matrix.
  std::vector<Elem> find_normal_basis() const {
    for (Elem z : ext_->elements()) {
      if (!ext_->is_primitive(z)) continue;
      std::vector<Elem> b;
      Elem cur = z;
      for (std::uint32_t i = 0; i < m_; ++i) {
        b.push_back(cur);
        cur = ext_->pow(cur, q());
      }
      if (determinant(*ext_, frobenius_matrix(b)).value != 0) return b;
    }
    throw InternalError("no primitive normal element found");
  }

  FieldPtr base_;
  FieldPtr ext_;
  std::uint32_t m_;
  std::vector<Elem> basis_;
  Matrix a_;
  Matrix a_inv_;
  std::vector<UniPoly> mu_;
  std::vector<std::uint32_t> embed_table_;
  std::vector<std::uint32_t> restrict_table_;
};

inline ExtensionPtr make_extension(FieldPtr base, std::uint32_t m, BasisKind kind = BasisKind::polynomial,
                                   std::span<const Elem> explicit_basis = {}) {
  return ExtensionMap::make(std::move(base), m, kind, explicit_basis);
}

// Univariate image of a multivariate polynomial over GF(q):
//   f(X) = sum phi_i prod_j mu_j(X)^(i_j),
// so that f(lift_point(x)) = embed(phi(x)) on GF(q)^m and
// deg f <= total_degree(phi) * q^(m-1). Requires total degree <= q.
inline UniPoly lift_poly(const ExtensionMap& em, const MultiPoly& phi) {
  if (phi.field()->id() != em.base()->id()) throw FieldMismatch();
  if (phi.vars() != em.m()) throw InvalidArgument("lift_poly: variable count must equal the extension degree m");
  if (phi.total_degree() > static_cast<int>(em.q()))
    throw InvalidArgument("lift_poly: total degree " + std::to_string(phi.total_degree()) +
                          " exceeds q = " + std::to_string(em.q()));
  const FieldPtr& ext = em.ext();
  std::vector<std::vector<UniPoly>> powers(em.m());
  for (std::uint32_t j = 0; j < em.m(); ++j) {
    powers[j].push_back(UniPoly::constant(ext, ext->one()));
    for (int d = 1; d <= std::max(phi.degree_in(j), 0); ++d) powers[j].push_back(powers[j].back() * em.mu()[j]);
  }
  UniPoly f(ext);
  for (const auto& [exps, c] : phi.terms()) {
    UniPoly term = UniPoly::constant(ext, em.embed(c));
    for (std::uint32_t j = 0; j < em.m(); ++j)
      if (exps[j]) term = term * powers[j][exps[j]];
    f = f + term;
  }
  return f;
}

}  // namespace rmprs
