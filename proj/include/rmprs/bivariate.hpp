#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rmprs/galois.hpp"
#include "rmprs/polynomial.hpp"

namespace rmprs {

// Q(X, Y) = sum_j rows[j](X) Y^j, raw encodings, each row trimmed.
class BiPoly {
 public:
  explicit BiPoly(FieldPtr field) : field_(std::move(field)) {}
  BiPoly(FieldPtr field, std::vector<std::vector<std::uint32_t>> rows) : field_(std::move(field)), rows_(std::move(rows)) {
    normalize();
  }

  // Y^j.
  static BiPoly y_power(FieldPtr field, std::size_t j) {
    std::vector<std::vector<std::uint32_t>> rows(j + 1);
    rows[j] = {1};
    return BiPoly(std::move(field), std::move(rows));
  }

  // Y - f(X).
  static BiPoly y_minus(const UniPoly& f) {
    const Field& F = *f.field();
    std::vector<std::uint32_t> r0(f.coeffs().size());
    for (std::size_t i = 0; i < r0.size(); ++i) r0[i] = F.raw_neg(f.coeffs()[i].value);
    return BiPoly(f.field(), {r0, {1}});
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }
  bool is_zero() const { return rows_.empty(); }
  int y_degree() const { return static_cast<int>(rows_.size()) - 1; }

  std::uint32_t coeff(std::size_t i, std::size_t j) const {
    return j < rows_.size() && i < rows_[j].size() ? rows_[j][i] : 0;
  }

  // max over nonzero terms of i + w*j; -1 for zero.
  long long weighted_degree(std::size_t w) const {
    long long best = -1;
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (!rows_[j].empty())
        best = std::max(best, static_cast<long long>(rows_[j].size() - 1) + static_cast<long long>(w * j));
    return best;
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_)
      for (auto c : r) n += c != 0;
    return n;
  }

  Elem operator()(Elem x, Elem y) const {
    const Field& F = *field_;
    F.check(x);
    F.check(y);
    std::uint32_t acc = 0;
    for (std::size_t j = rows_.size(); j-- > 0;) {
      std::uint32_t r = 0;
      for (std::size_t i = rows_[j].size(); i-- > 0;) r = F.raw_add(F.raw_mul(r, x.value), rows_[j][i]);
      acc = F.raw_add(F.raw_mul(acc, y.value), r);
    }
    return Elem{acc, F.id()};
  }

  BiPoly operator*(const BiPoly& o) const {
    if (o.field_->id() != field_->id()) throw FieldMismatch();
    if (is_zero() || o.is_zero()) return BiPoly(field_);
    const Field& F = *field_;
    std::vector<std::vector<std::uint32_t>> out(rows_.size() + o.rows_.size() - 1);
    for (std::size_t ja = 0; ja < rows_.size(); ++ja)
      for (std::size_t jb = 0; jb < o.rows_.size(); ++jb) {
        const auto& a = rows_[ja];
        const auto& b = o.rows_[jb];
        if (a.empty() || b.empty()) continue;
        auto& dst = out[ja + jb];
        if (dst.size() < a.size() + b.size() - 1) dst.resize(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i])
            for (std::size_t k = 0; k < b.size(); ++k) dst[i + k] = F.raw_add(dst[i + k], F.raw_mul(a[i], b[k]));
      }
    return BiPoly(field_, std::move(out));
  }

  // Q(X, f(X)) as a univariate polynomial.
  UniPoly substitute(const UniPoly& f) const {
    if (f.field()->id() != field_->id()) throw FieldMismatch();
    UniPoly acc(field_);
    for (std::size_t j = rows_.size(); j-- > 0;) acc = acc * f + UniPoly::from_raw(field_, rows_[j]);
    return acc;
  }

  // Hasse derivative D_{a,b} Q evaluated at (x, y):
  //   sum_{i>=a, j>=b} C(i,a) C(j,b) q_ij x^(i-a) y^(j-b).
  // The caller passes the weights xw[i] = C(i,a) x^(i-a) and
  // yw[j] = C(j,b) y^(j-b) (zero below a and b), which depend only on the
  // constraint and are shared by every polynomial it is applied to.
  std::uint32_t hasse(std::span<const std::uint32_t> xw, std::span<const std::uint32_t> yw) const {
    const Field& F = *field_;
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const std::uint32_t cj = yw[j];
      if (cj == 0) continue;
      const auto& row = rows_[j];
      std::uint32_t r = 0;
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] && xw[i]) r = F.raw_add(r, F.raw_mul(row[i], xw[i]));
      if (r) acc = F.raw_add(acc, F.raw_mul(cj, r));
    }
    return acc;
  }

  // Convenience form computing the weights from a binomial table.
  std::uint32_t hasse(std::size_t a, std::size_t b, Elem x, Elem y,
                      const std::vector<std::vector<std::uint32_t>>& binom) const {
    std::size_t max_x = 0;
    for (const auto& r : rows_) max_x = std::max(max_x, r.size());
    return hasse(hasse_weights(*field_, a, x.value, max_x, binom), hasse_weights(*field_, b, y.value, rows_.size(), binom));
  }

  // w[i] = C(i,a) x^(i-a) for i < len.
  static std::vector<std::uint32_t> hasse_weights(const Field& F, std::size_t a, std::uint32_t x, std::size_t len,
                                                  const std::vector<std::vector<std::uint32_t>>& binom) {
    std::vector<std::uint32_t> w(len, 0);
    std::uint32_t power = 1;
    for (std::size_t i = a; i < len; ++i) {
      w[i] = F.raw_mul(binom[i][a], power);
      power = F.raw_mul(power, x);
    }
    return w;
  }

  // this = s*this - t*o
  void combine(std::uint32_t s, std::uint32_t t, const BiPoly& o) {
    const Field& F = *field_;
    if (rows_.size() < o.rows_.size()) rows_.resize(o.rows_.size());
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      auto& r = rows_[j];
      if (s != 1)
        for (auto& c : r) c = F.raw_mul(c, s);
      if (j >= o.rows_.size()) continue;
      const auto& src = o.rows_[j];
      if (r.size() < src.size()) r.resize(src.size(), 0);
      const std::uint32_t nt = F.raw_neg(t);
      for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i]) r[i] = F.raw_add(r[i], F.raw_mul(nt, src[i]));
    }
    normalize();
  }

  // this = (X - alpha) * this
  void mul_x_minus(std::uint32_t alpha) {
    const Field& F = *field_;
    const std::uint32_t na = F.raw_neg(alpha);
    for (auto& r : rows_) {
      if (r.empty()) continue;
      r.push_back(0);
      for (std::size_t i = r.size() - 1; i > 0; --i) r[i] = F.raw_add(r[i - 1], F.raw_mul(na, r[i]));
      r[0] = F.raw_mul(na, r[0]);
    }
    normalize();
  }

  // Largest s with X^s dividing Q, and the quotient Q / X^s.
  BiPoly divide_out_x() const {
    std::size_t s = SIZE_MAX;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i]) {
          s = std::min(s, i);
          break;
        }
    if (s == 0 || s == SIZE_MAX) return *this;
    auto rows = rows_;
    for (auto& r : rows)
      if (!r.empty()) r.erase(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(std::min(s, r.size())));
    return BiPoly(field_, std::move(rows));
  }

  // Q(X, X*Y + gamma).
  BiPoly shift_substitute(std::uint32_t gamma) const {
    const Field& F = *field_;
    auto rows = rows_;
    const std::size_t L = rows.size();
    // Taylor shift Y -> Y + gamma by repeated synthetic division.
    if (gamma != 0 && L > 1) {
      for (std::size_t i = 0; i + 1 < L; ++i)
        for (std::size_t j = L - 1; j > i; --j) {
          const auto& hi = rows[j];
          auto& lo = rows[j - 1];
          if (hi.empty()) continue;
          if (lo.size() < hi.size()) lo.resize(hi.size(), 0);
          for (std::size_t k = 0; k < hi.size(); ++k)
            if (hi[k]) lo[k] = F.raw_add(lo[k], F.raw_mul(gamma, hi[k]));
        }
    }
    for (std::size_t j = 1; j < L; ++j)
      if (!rows[j].empty()) rows[j].insert(rows[j].begin(), j, 0);
    return BiPoly(field_, std::move(rows));
  }

  // Q(0, Y) as a univariate polynomial in Y.
  UniPoly at_x_zero() const {
    std::vector<std::uint32_t> c(rows_.size(), 0);
    for (std::size_t j = 0; j < rows_.size(); ++j) c[j] = rows_[j].empty() ? 0 : rows_[j][0];
    return UniPoly::from_raw(field_, c);
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.field_->id() == b.field_->id() && a.rows_ == b.rows_;
  }

 private:
  void normalize() {
    for (auto& r : rows_)
      while (!r.empty() && r.back() == 0) r.pop_back();
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  }

  FieldPtr field_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

// Pascal triangle mod p, rows 0..n, as raw prime-field encodings.
inline std::vector<std::vector<std::uint32_t>> binomials_mod_p(std::size_t n, std::uint32_t p) {
  std::vector<std::vector<std::uint32_t>> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    t[i].assign(i + 1, 1);
    for (std::size_t k = 1; k < i; ++k) t[i][k] = (t[i - 1][k - 1] + t[i - 1][k]) % p;
  }
  return t;
}

}  // namespace rmprs
