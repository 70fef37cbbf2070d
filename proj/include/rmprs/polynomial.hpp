#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rmprs/galois.hpp"
#include "rmprs/random.hpp"

namespace rmprs {

// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

// Dense univariate polynomial, coefficients low to high, never with a
// trailing zero.
class UniPoly {
 public:
  explicit UniPoly(FieldPtr field) : field_(std::move(field)) {}

  UniPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (auto c : coeffs_) field_->check(c);
    normalize();
  }

  static UniPoly constant(FieldPtr field, Elem c) { return UniPoly(std::move(field), {c}); }

  static UniPoly monomial(FieldPtr field, Elem c, std::size_t degree) {
    std::vector<Elem> coeffs(degree + 1, field->zero());
    coeffs[degree] = c;
    return UniPoly(std::move(field), std::move(coeffs));
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }

  // Horner evaluation.
  Elem operator()(Elem x) const {
    field_->check(x);
    std::uint32_t acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
      acc = field_->raw_add(field_->raw_mul(acc, x.value), coeffs_[i].value);
    return Elem{acc, field_->id()};
  }

  UniPoly operator+(const UniPoly& o) const {
    same_field(o);
    std::vector<Elem> out(std::max(coeffs_.size(), o.coeffs_.size()), field_->zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->add(coeff(i), o.coeff(i));
    return UniPoly(field_, std::move(out));
  }

  UniPoly operator-(const UniPoly& o) const {
    same_field(o);
    std::vector<Elem> out(std::max(coeffs_.size(), o.coeffs_.size()), field_->zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->sub(coeff(i), o.coeff(i));
    return UniPoly(field_, std::move(out));
  }

  UniPoly operator*(const UniPoly& o) const {
    same_field(o);
    if (is_zero() || o.is_zero()) return UniPoly(field_);
    const Field& f = *field_;
    std::vector<std::uint32_t> acc(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const std::uint32_t a = coeffs_[i].value;
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        acc[i + j] = f.raw_add(acc[i + j], f.raw_mul(a, o.coeffs_[j].value));
    }
    return from_raw(field_, acc);
  }

  UniPoly scaled(Elem c) const {
    std::vector<Elem> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = field_->mul(coeffs_[i], c);
    return UniPoly(field_, std::move(out));
  }

  UniPoly pow(std::uint64_t exponent) const {
    UniPoly result = constant(field_, field_->one());
    UniPoly base = *this;
    while (exponent) {
      if (exponent & 1) result = result * base;
      exponent >>= 1;
      if (exponent) base = base * base;
    }
    return result;
  }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    same_field(d);
    if (d.is_zero()) throw DivisionByZero();
    const Field& f = *field_;
    std::vector<Elem> rem = coeffs_;
    if (rem.size() < d.coeffs_.size()) return {UniPoly(field_), *this};
    std::vector<Elem> quo(rem.size() - d.coeffs_.size() + 1, f.zero());
    const Elem lead_inv = f.inv(d.coeffs_.back());
    for (std::size_t k = quo.size(); k-- > 0;) {
      const Elem factor = f.mul(rem[k + d.coeffs_.size() - 1], lead_inv);
      quo[k] = factor;
      for (std::size_t j = 0; j < d.coeffs_.size(); ++j) rem[k + j] = f.sub(rem[k + j], f.mul(factor, d.coeffs_[j]));
    }
    return {UniPoly(field_, std::move(quo)), UniPoly(field_, std::move(rem))};
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.field_->id() == b.field_->id() && a.coeffs_ == b.coeffs_;
  }

  static UniPoly from_raw(FieldPtr field, std::span<const std::uint32_t> raw) {
    std::vector<Elem> out(raw.size());
    const auto id = field->id();
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = Elem{raw[i], id};
    return UniPoly(std::move(field), std::move(out));
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().value == 0) coeffs_.pop_back();
  }
  void same_field(const UniPoly& o) const {
    if (o.field_->id() != field_->id()) throw FieldMismatch();
  }

  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

// Unique polynomial of degree < points.size() through the given points.
inline UniPoly lagrange_interpolate(const FieldPtr& field, std::span<const std::pair<Elem, Elem>> points) {
  const Field& f = *field;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first) throw InvalidArgument("duplicate x-coordinate in interpolation");

  UniPoly result(field);
  for (std::size_t i = 0; i < points.size(); ++i) {
    UniPoly basis = UniPoly::constant(field, f.one());
    Elem denom = f.one();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * UniPoly(field, {f.neg(points[j].first), f.one()});
      denom = f.mul(denom, f.sub(points[i].first, points[j].first));
    }
    result = result + basis.scaled(f.div(points[i].second, denom));
  }
  return result;
}

using Exponents = std::vector<std::uint32_t>;

// Sparse multivariate polynomial in m variables.
class MultiPoly {
 public:
  MultiPoly(FieldPtr field, std::size_t vars) : field_(std::move(field)), vars_(vars) {}

  const FieldPtr& field() const { return field_; }
  std::size_t vars() const { return vars_; }
  const std::map<Exponents, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Accumulates c * x^exps.
  MultiPoly& add_term(const Exponents& exps, Elem c) {
    if (exps.size() != vars_) throw InvalidArgument("exponent vector length does not match variable count");
    field_->check(c);
    if (c.value == 0) return *this;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      terms_.emplace(exps, c);
    } else {
      it->second = field_->add(it->second, c);
      if (it->second.value == 0) terms_.erase(it);
    }
    return *this;
  }

  Elem coeff(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? field_->zero() : it->second;
  }

  int total_degree() const {
    int best = kZeroDegree;
    for (const auto& [exps, c] : terms_) {
      int s = 0;
      for (auto e : exps) s += static_cast<int>(e);
      best = std::max(best, s);
    }
    return best;
  }

  int degree_in(std::size_t var) const {
    int best = kZeroDegree;
    for (const auto& [exps, c] : terms_) best = std::max(best, static_cast<int>(exps.at(var)));
    return best;
  }

  Elem operator()(std::span<const Elem> x) const {
    if (x.size() != vars_) throw InvalidArgument("point dimension does not match variable count");
    for (auto xi : x) field_->check(xi);
    const Field& f = *field_;
    std::uint32_t acc = 0;
    for (const auto& [exps, c] : terms_) {
      std::uint32_t term = c.value;
      for (std::size_t j = 0; j < vars_ && term != 0; ++j)
        if (exps[j]) term = f.raw_mul(term, f.raw_pow(x[j].value, exps[j]));
      acc = f.raw_add(acc, term);
    }
    return Elem{acc, f.id()};
  }

  MultiPoly operator+(const MultiPoly& o) const {
    compatible(o);
    MultiPoly out = *this;
    for (const auto& [exps, c] : o.terms_) out.add_term(exps, c);
    return out;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    compatible(o);
    MultiPoly out(field_, vars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        Exponents e(vars_);
        for (std::size_t j = 0; j < vars_; ++j) e[j] = ea[j] + eb[j];
        out.add_term(e, field_->mul(ca, cb));
      }
    return out;
  }

  MultiPoly scaled(Elem c) const {
    MultiPoly out(field_, vars_);
    for (const auto& [exps, v] : terms_) out.add_term(exps, field_->mul(v, c));
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_->id() == b.field_->id() && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void compatible(const MultiPoly& o) const {
    if (o.field_->id() != field_->id()) throw FieldMismatch();
    if (o.vars_ != vars_) throw InvalidArgument("polynomials have different variable counts");
  }

  FieldPtr field_;
  std::size_t vars_;
  std::map<Exponents, Elem> terms_;
};

// Replaces x_j^e (e >= q) by x_j^(1 + (e-1) mod (q-1)); the result is the
// same function on GF(q)^m with every exponent at most q-1.
inline MultiPoly reduce_functional(const MultiPoly& phi, std::uint64_t q) {
  if (q < 2) throw InvalidArgument("reduce_functional needs q >= 2");
  MultiPoly out(phi.field(), phi.vars());
  for (const auto& [exps, c] : phi.terms()) {
    Exponents e = exps;
    for (auto& x : e)
      if (x >= q) x = static_cast<std::uint32_t>(1 + (x - 1) % (q - 1));
    out.add_term(e, c);
  }
  return out;
}

inline MultiPoly reduce_functional(const MultiPoly& phi) { return reduce_functional(phi, phi.field()->order()); }

// Calls fn(point) for every point of GF(q)^m in lexicographic order, first
// coordinate most significant.
template <typename Fn>
void for_each_grid_point(const Field& field, std::size_t m, Fn&& fn) {
  const std::uint64_t q = field.order();
  std::vector<Elem> point(m, field.zero());
  while (true) {
    fn(std::span<const Elem>(point));
    std::size_t j = m;
    while (j > 0) {
      --j;
      if (point[j].value + 1 < q) {
        point[j].value += 1;
        break;
      }
      point[j].value = 0;
      if (j == 0) return;
    }
    if (m == 0) return;
  }
}

inline std::uint64_t count_zeros(const MultiPoly& phi, std::uint64_t budget = 1'000'000) {
  const Field& f = *phi.field();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < phi.vars(); ++j) {
    total *= f.order();
    if (total > budget) throw InvalidArgument("count_zeros: grid exceeds enumeration budget");
  }
  std::uint64_t zeros = 0;
  for_each_grid_point(f, phi.vars(), [&](std::span<const Elem> x) {
    if (phi(x).value == 0) ++zeros;
  });
  return zeros;
}

// Monomials x^i with sum(i) <= total_degree and every i_j <= max_exponent,
// in lexicographic exponent order.
inline std::vector<Exponents> monomials_up_to(std::size_t m, std::uint32_t total_degree, std::uint32_t max_exponent) {
  std::vector<Exponents> out;
  Exponents cur(m, 0);
  auto rec = [&](auto&& self, std::size_t j, std::uint32_t budget) -> void {
    if (j == m) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= std::min(budget, max_exponent); ++e) {
      cur[j] = e;
      self(self, j + 1, budget - e);
    }
    cur[j] = 0;
  };
  rec(rec, 0, total_degree);
  return out;
}

// Random polynomial with nonzero coefficients on a uniformly chosen support
// of at most max_terms monomials drawn from `basis`.
inline MultiPoly random_multipoly(const FieldPtr& field, std::size_t m, std::span<const Exponents> basis,
                                  std::size_t max_terms, Rng& rng) {
  MultiPoly out(field, m);
  if (basis.empty() || max_terms == 0 || field->order() < 2) return out;
  const std::size_t terms = 1 + rng.below(std::min(max_terms, basis.size()));
  std::vector<std::size_t> idx(basis.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < terms; ++i) {
    std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    out.add_term(basis[idx[i]], field->elem(1 + rng.below(field->order() - 1)));
  }
  return out;
}

// Random polynomial whose coefficient on every basis monomial is uniform
// over the field (zero included); the uniform message distribution of a
// linear code with that monomial basis.
inline MultiPoly uniform_multipoly(const FieldPtr& field, std::size_t m, std::span<const Exponents> basis, Rng& rng) {
  MultiPoly out(field, m);
  for (const auto& e : basis) out.add_term(e, field->elem(rng.below(field->order())));
  return out;
}

}  // namespace rmprs
