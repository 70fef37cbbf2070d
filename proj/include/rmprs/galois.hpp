#pragma once

// Arithmetic in GF(p^e).
//
// Elements are encoded as integers in [0, p^e): the base-p digits of the
// encoding are the coefficients (low to high) of the element's polynomial
// representative modulo the field's modulus. Each Field carries a unique
// id, and every Elem remembers the id of the field that produced it so that
// mixing fields is caught at the point of arithmetic.

#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmprs/errors.hpp"

namespace rmprs {

struct Elem {
  std::uint32_t value = 0;
  std::uint32_t field = 0;

  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over the prime field GF(p), coefficients low to high.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2) is the inverse.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t exp = p - 2;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

inline PrimePoly poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t factor = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline PrimePoly digits(std::uint64_t v, std::uint32_t p, std::size_t len) {
  PrimePoly d(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return d;
}

inline std::uint64_t undigits(const PrimePoly& d, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const PrimePoly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      PrimePoly g = digits(c, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

inline std::uint32_t next_field_id() {
  static std::atomic<std::uint32_t> counter{0};
  return ++counter;
}

}  // namespace detail

class Field : public std::enable_shared_from_this<Field> {
 public:
  // Orders up to this bound use log/antilog tables.
  static constexpr std::uint64_t kTableLimit = 4096;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  // GF(p^e) with the given monic modulus (e+1 coefficients, low to high), or
  // the smallest monic irreducible of degree e when none is given.
  static FieldPtr make(std::uint32_t p, std::uint32_t e,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    return FieldPtr(new Field(p, e, std::move(modulus)));
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }
  std::uint64_t order() const { return q_; }
  std::uint32_t id() const { return id_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  // Checked construction from an encoding.
  Elem elem(std::uint64_t value) const {
    if (value >= q_)
      throw InvalidArgument("element encoding " + std::to_string(value) + " out of range for GF(" +
                            std::to_string(q_) + ")");
    return Elem{static_cast<std::uint32_t>(value), id_};
  }
  Elem zero() const { return Elem{0, id_}; }
  Elem one() const { return Elem{1, id_}; }

  // Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const {
    const std::int64_t p = p_;
    return Elem{static_cast<std::uint32_t>(((v % p) + p) % p), id_};
  }

  bool owns(Elem a) const { return a.field == id_ && a.value < q_; }

  Elem add(Elem a, Elem b) const {
    check(a);
    check(b);
    return Elem{raw_add(a.value, b.value), id_};
  }
  Elem sub(Elem a, Elem b) const {
    check(a);
    check(b);
    return Elem{raw_add(a.value, raw_neg(b.value)), id_};
  }
  Elem neg(Elem a) const {
    check(a);
    return Elem{raw_neg(a.value), id_};
  }
  Elem mul(Elem a, Elem b) const {
    check(a);
    check(b);
    return Elem{raw_mul(a.value, b.value), id_};
  }
  Elem inv(Elem a) const {
    check(a);
    if (a.value == 0) throw DivisionByZero();
    return Elem{raw_inv(a.value), id_};
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // Square-and-multiply; pow(0, 0) = 1.
  Elem pow(Elem a, std::uint64_t exponent) const {
    check(a);
    return Elem{raw_pow(a.value, exponent), id_};
  }

  bool is_primitive(Elem a) const {
    check(a);
    if (a.value == 0) return false;
    for (std::uint64_t r : detail::prime_factors(q_ - 1))
      if (raw_pow(a.value, (q_ - 1) / r) == 1) return false;
    return true;
  }

  // Smallest encoding that generates the multiplicative group.
  Elem primitive() const { return Elem{primitive_, id_}; }

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(q_);
    for (std::uint64_t v = 0; v < q_; ++v) out.push_back(Elem{static_cast<std::uint32_t>(v), id_});
    return out;
  }

  // Textual record "p e c_0 ... c_e".
  std::string record() const {
    std::ostringstream os;
    os << p_ << ' ' << e_;
    for (auto c : modulus_) os << ' ' << c;
    return os.str();
  }

  std::string name() const {
    return e_ == 1 ? "GF(" + std::to_string(p_) + ")"
                   : "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")";
  }

  // Unchecked arithmetic on raw encodings, for inner loops that already
  // validated their inputs.
  std::uint32_t raw_add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) return (a + b) % p_;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return digit_add(a, b);
  }
  std::uint32_t raw_neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      const std::uint32_t d = a % p_;
      a /= p_;
      out += (d == 0 ? 0 : p_ - d) * scale;
      scale *= p_;
    }
    return out;
  }
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const {
    if (!mul_table_.empty()) return mul_table_[(a << mul_shift_) | b];
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
  }
  std::uint32_t raw_inv(std::uint32_t a) const {
    if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return raw_pow(a, q_ - 2);
  }
  std::uint32_t raw_pow(std::uint32_t a, std::uint64_t exponent) const {
    if (exponent == 0) return 1;
    if (a == 0) return 0;
    if (!log_.empty()) return exp_[(static_cast<std::uint64_t>(log_[a]) * (exponent % (q_ - 1))) % (q_ - 1)];
    std::uint32_t result = 1, base = a;
    while (exponent) {
      if (exponent & 1) result = slow_mul(result, base);
      base = slow_mul(base, base);
      exponent >>= 1;
    }
    return result;
  }

  void check(Elem a) const {
    if (a.field != id_) throw FieldMismatch();
  }

 private:
  Field(std::uint32_t p, std::uint32_t e, std::optional<std::vector<std::uint32_t>> modulus)
      : p_(p), e_(e), id_(detail::next_field_id()) {
    if (!detail::is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw InvalidArgument("extension degree must be positive");
    q_ = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      q_ *= p;
      if (q_ > kMaxOrder) throw InvalidArgument("field order exceeds supported size 2^20");
    }
    if (modulus) {
      const auto& m = *modulus;
      if (m.size() != e + 1) throw InvalidArgument("modulus must have e+1 coefficients");
      for (auto c : m)
        if (c >= p) throw InvalidArgument("modulus coefficient outside the prime field");
      if (m.back() != 1) throw InvalidArgument("modulus must be monic");
      if (!detail::is_irreducible(m, p)) throw InvalidArgument("modulus is reducible over GF(p)");
      modulus_ = m;
    } else {
      modulus_ = default_modulus(p, e);
    }
    if (p_ == 2) {
      modulus_bits_ = static_cast<std::uint32_t>(detail::undigits(modulus_, 2));
    } else if (e_ > 1 && q_ <= 256) {
      add_table_.resize(q_ * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b) add_table_[a * q_ + b] = digit_add(a, b);
    }
    primitive_ = find_primitive();
    if (q_ <= kTableLimit && q_ > 1) build_tables();
    if (q_ <= kMulTableLimit) {
      while ((std::uint64_t{1} << mul_shift_) < q_) ++mul_shift_;
      mul_table_.assign(std::size_t{1} << (2 * mul_shift_), 0);
      for (std::uint32_t a = 1; a < q_; ++a)
        for (std::uint32_t b = 1; b < q_; ++b) mul_table_[(a << mul_shift_) | b] = exp_[log_[a] + log_[b]];
    }
  }

  static constexpr std::uint64_t kMulTableLimit = 256;

  static std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t e) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < e; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      auto cand = detail::digits(c, p, e);
      cand.push_back(1);
      if (detail::is_irreducible(cand, p)) return cand;
    }
    throw InternalError("no irreducible polynomial found");
  }

  std::uint32_t digit_add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) {
      std::uint64_t prod = 0;
      for (std::uint32_t i = 0; i < e_; ++i)
        if ((b >> i) & 1) prod ^= static_cast<std::uint64_t>(a) << i;
      for (std::uint32_t i = 2 * e_; i-- > e_;)
        if ((prod >> i) & 1) prod ^= static_cast<std::uint64_t>(modulus_bits_) << (i - e_);
      return static_cast<std::uint32_t>(prod);
    }
    if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    const auto da = detail::digits(a, p_, e_);
    const auto db = detail::digits(b, p_, e_);
    detail::PrimePoly prod(2 * e_ - 1, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
      for (std::uint32_t j = 0; j < e_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
    auto rem = detail::poly_mod(prod, modulus_, p_);
    return static_cast<std::uint32_t>(detail::undigits(rem, p_));
  }

  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t exponent) const {
    std::uint32_t result = 1, base = a;
    while (exponent) {
      if (exponent & 1) result = slow_mul(result, base);
      base = slow_mul(base, base);
      exponent >>= 1;
    }
    return result;
  }

  std::uint32_t find_primitive() const {
    const auto factors = detail::prime_factors(q_ - 1);
    for (std::uint32_t g = 1; g < q_; ++g) {
      bool ok = true;
      for (auto r : factors)
        if (slow_pow(g, (q_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) return g;
    }
    throw InternalError("no primitive element found");
  }

  void build_tables() {
    const std::uint64_t n = q_ - 1;
    exp_.assign(2 * n, 0);
    log_.assign(q_, 0);
    std::uint32_t x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, primitive_);
    }
    for (std::uint64_t i = n; i < 2 * n; ++i) exp_[i] = exp_[i - n];
  }

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint64_t q_ = 1;
  std::uint32_t id_;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t modulus_bits_ = 0;
  std::uint32_t primitive_ = 1;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> mul_table_;
  std::uint32_t mul_shift_ = 0;
};

inline FieldPtr make_field(std::uint32_t p, std::uint32_t e,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  return Field::make(p, e, std::move(modulus));
}

// Field of the given prime-power order with its default modulus.
inline FieldPtr field_of_order(std::uint64_t q) {
  if (q < 2) throw InvalidArgument("field order must be at least 2");
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint64_t rest = q;
    std::uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (rest != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return make_field(static_cast<std::uint32_t>(p), e);
  }
  throw InvalidArgument(std::to_string(q) + " is not a prime power");
}

// Parses "p e c_0 ... c_e".
inline FieldPtr parse_field_record(const std::string& text) {
  std::istringstream is(text);
  std::uint64_t p = 0, e = 0;
  if (!(is >> p >> e)) throw InvalidArgument("field record must start with 'p e'");
  std::vector<std::uint32_t> mod;
  std::uint64_t c;
  while (is >> c) mod.push_back(static_cast<std::uint32_t>(c));
  if (!is.eof()) throw InvalidArgument("malformed field record");
  if (mod.empty()) return make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e));
  return make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e), mod);
}

// x^(q^i). The caller supplies q, the order of the subfield whose Frobenius
// is wanted; q must be a power of the characteristic dividing into the field.
inline Elem frobenius(const Field& field, Elem x, std::uint32_t i, std::uint64_t q) {
  field.check(x);
  Elem out = x;
  for (std::uint32_t step = 0; step < i; ++step) out = field.pow(out, q);
  return out;
}

}  // namespace rmprs
