#pragma once

// Product Reed-Solomon codes on the m-cube and recursive product decoding.
//
// Tensor words are stored row-major with the first index slowest, which is
// the same order as the lexicographic grid points of a full-grid RM code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmprs/polynomial.hpp"
#include "rmprs/rm_codec.hpp"
#include "rmprs/rs_codec.hpp"

namespace rmprs {

struct PRSSpec {
  FieldPtr field;
  std::vector<std::uint32_t> k;

  std::uint32_t m() const { return static_cast<std::uint32_t>(k.size()); }
  std::uint64_t q() const { return field->order(); }
  std::uint64_t n() const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < k.size(); ++i) n *= q();
    return n;
  }
};

inline PRSSpec make_prs_spec(FieldPtr field, std::vector<std::uint32_t> k) {
  if (k.empty()) throw InvalidArgument("PRS code needs m >= 1");
  for (auto ki : k)
    if (ki < 1 || ki > field->order()) throw InvalidArgument("PRS dimensions must satisfy 1 <= k_i <= q");
  return PRSSpec{std::move(field), std::move(k)};
}

class TensorWord {
 public:
  TensorWord(std::vector<std::size_t> shape, std::vector<Elem> symbols)
      : shape_(std::move(shape)), symbols_(std::move(symbols)) {
    std::size_t total = 1;
    for (auto s : shape_) total *= s;
    if (total != symbols_.size()) throw InvalidArgument("tensor word length does not match its shape");
    strides_.assign(shape_.size(), 1);
    for (std::size_t a = shape_.size(); a-- > 1;) strides_[a - 1] = strides_[a] * shape_[a];
  }

  // Cube of side q in m dimensions.
  static TensorWord cube(std::size_t q, std::size_t m, std::vector<Elem> symbols) {
    return TensorWord(std::vector<std::size_t>(m, q), std::move(symbols));
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<std::size_t>& strides() const { return strides_; }
  std::size_t dims() const { return shape_.size(); }
  std::size_t size() const { return symbols_.size(); }
  const std::vector<Elem>& symbols() const { return symbols_; }
  std::vector<Elem>& symbols() { return symbols_; }

  std::size_t flat(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size()) throw InvalidArgument("index has the wrong number of coordinates");
    std::size_t f = 0;
    for (std::size_t a = 0; a < index.size(); ++a) {
      if (index[a] >= shape_[a]) throw InvalidArgument("tensor index out of range");
      f += index[a] * strides_[a];
    }
    return f;
  }

  Elem& at(std::span<const std::size_t> index) { return symbols_[flat(index)]; }
  Elem at(std::span<const std::size_t> index) const { return symbols_[flat(index)]; }

  friend bool operator==(const TensorWord&, const TensorWord&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::vector<Elem> symbols_;
};

// A sub-array of a tensor word addressed by flat positions, in row-major
// order of the free axes. Reads copy out; write() substitutes in place.
class Slice {
 public:
  Slice(TensorWord& word, std::vector<std::size_t> positions) : word_(&word), positions_(std::move(positions)) {}

  std::size_t size() const { return positions_.size(); }
  const std::vector<std::size_t>& positions() const { return positions_; }

  Word read() const {
    Word out;
    out.reserve(positions_.size());
    for (auto p : positions_) out.push_back(word_->symbols()[p]);
    return out;
  }

  void write(std::span<const Elem> values) {
    if (values.size() != positions_.size()) throw InvalidArgument("slice write: length mismatch");
    for (std::size_t i = 0; i < positions_.size(); ++i) word_->symbols()[positions_[i]] = values[i];
  }

 private:
  TensorWord* word_;
  std::vector<std::size_t> positions_;
};

// fixed[a] pins axis a; free axes keep their row-major order.
inline Slice slice(TensorWord& word, std::span<const std::optional<std::size_t>> fixed) {
  if (fixed.size() != word.dims()) throw InvalidArgument("slice: assignment must cover every axis");
  std::size_t base = 0;
  std::vector<std::size_t> free_axes;
  for (std::size_t a = 0; a < fixed.size(); ++a) {
    if (fixed[a]) {
      if (*fixed[a] >= word.shape()[a]) throw InvalidArgument("slice: index out of range");
      base += *fixed[a] * word.strides()[a];
    } else {
      free_axes.push_back(a);
    }
  }
  std::vector<std::size_t> positions{base};
  for (auto a : free_axes) {
    std::vector<std::size_t> next;
    next.reserve(positions.size() * word.shape()[a]);
    for (auto p : positions)
      for (std::size_t t = 0; t < word.shape()[a]; ++t) next.push_back(p + t * word.strides()[a]);
    positions = std::move(next);
  }
  return Slice(word, std::move(positions));
}

inline void check_prs_message(const PRSSpec& spec, const MultiPoly& phi) {
  if (phi.field()->id() != spec.field->id()) throw FieldMismatch();
  if (phi.vars() != spec.m()) throw InvalidArgument("PRS message must have m variables");
  for (std::uint32_t i = 0; i < spec.m(); ++i)
    if (phi.degree_in(i) > static_cast<int>(spec.k[i]) - 1)
      throw InvalidArgument("PRS message degree in x_" + std::to_string(i + 1) + " exceeds k_i - 1");
}

inline TensorWord prs_encode(const PRSSpec& spec, const MultiPoly& phi) {
  check_prs_message(spec, phi);
  std::vector<Elem> symbols;
  symbols.reserve(spec.n());
  for_each_grid_point(*spec.field, spec.m(), [&](std::span<const Elem> x) { symbols.push_back(phi(x)); });
  return TensorWord::cube(spec.q(), spec.m(), std::move(symbols));
}

// Monomials with x_i-degree < k_i.
inline std::vector<Exponents> prs_monomials(const PRSSpec& spec) {
  std::vector<Exponents> out;
  Exponents cur(spec.m(), 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == spec.m()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e < spec.k[j]; ++e) {
      cur[j] = e;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// t_i = ceil(q (1 - sqrt(k_i / q))); the line decoder finds every codeword
// at distance < t_i.
inline long long prs_axis_threshold(std::uint64_t q, std::uint32_t k) { return radius_ceiling(q, k); }

struct PRSRadius {
  double relative = 0.0;
  std::uint64_t weight = 0;
};

// prod (1 - sqrt(k_i/q)) and floor of that times q^m.
inline PRSRadius prs_radius(const PRSSpec& spec) {
  double tau = 1.0;
  for (auto k : spec.k) tau *= 1.0 - std::sqrt(static_cast<double>(k) / static_cast<double>(spec.q()));
  tau = std::clamp(tau, 0.0, 1.0);
  // Small epsilon keeps exact products such as 0.25 * 256 from flooring low.
  const double scaled = tau * static_cast<double>(spec.n());
  return PRSRadius{tau, static_cast<std::uint64_t>(std::floor(scaled + 1e-9))};
}

namespace detail {

// Decodes one line in place: nearest entry of the list within t-1, or left
// unchanged when the list is empty.
inline void decode_line_in_place(const RSSpec& rs, std::size_t tau, std::vector<Elem>& symbols,
                                 std::span<const std::size_t> positions) {
  Word line;
  line.reserve(positions.size());
  for (auto p : positions) line.push_back(symbols[p]);
  auto best = rs_nearest(rs, line, tau);
  if (!best) return;
  for (std::size_t i = 0; i < positions.size(); ++i) symbols[positions[i]] = best->codeword[i];
}

struct AxisCode {
  RSSpec rs;
  std::size_t tau;
};

// Decodes the sub-cube spanned by axes [0, j) at `offset`, axes j..m-1 fixed.
inline void prs_recurse(const std::vector<AxisCode>& axes, std::uint64_t q, std::span<const std::size_t> strides,
                        std::vector<Elem>& symbols, std::size_t offset, std::size_t j) {
  const std::size_t last = j - 1;
  std::vector<std::size_t> positions(q);
  if (j == 1) {
    for (std::uint64_t t = 0; t < q; ++t) positions[t] = offset + t * strides[0];
    decode_line_in_place(axes[0].rs, axes[0].tau, symbols, positions);
    return;
  }
  // Every hyperplane with the last free axis pinned.
  for (std::uint64_t a = 0; a < q; ++a) prs_recurse(axes, q, strides, symbols, offset + a * strides[last], j - 1);
  // Every line along the last free axis.
  std::vector<std::size_t> idx(last, 0);
  while (true) {
    std::size_t base = offset;
    for (std::size_t b = 0; b < last; ++b) base += idx[b] * strides[b];
    for (std::uint64_t t = 0; t < q; ++t) positions[t] = base + t * strides[last];
    decode_line_in_place(axes[last].rs, axes[last].tau, symbols, positions);
    std::size_t b = last;
    while (b > 0) {
      --b;
      if (++idx[b] < q) break;
      idx[b] = 0;
      if (b == 0) return;
    }
  }
}

}  // namespace detail

// Recursive product decoder: decode the q hyperplanes orthogonal to the last
// axis recursively, then every line along the last axis. Slices whose list is
// empty are left as received.
inline TensorWord prs_decode_recursive(const PRSSpec& spec, const TensorWord& r) {
  if (r.shape() != std::vector<std::size_t>(spec.m(), spec.q()))
    throw InvalidArgument("received tensor does not have shape q^m");
  for (auto s : r.symbols()) spec.field->check(s);
  std::vector<detail::AxisCode> axes;
  for (auto k : spec.k) {
    if (k >= spec.q()) throw InvalidArgument("recursive PRS decoding needs k_i < q");
    const long long t = prs_axis_threshold(spec.q(), k);
    axes.push_back({full_rs_spec(spec.field, k - 1), static_cast<std::size_t>(std::max(0LL, t - 1))});
  }
  TensorWord out = r;
  detail::prs_recurse(axes, spec.q(), out.strides(), out.symbols(), 0, spec.m());
  return out;
}

// Bounded-distance decoder for one axis: returns the corrected line, or
// nullopt to leave it unchanged. `radius` is the number of errors it is
// guaranteed to correct.
struct LineDecoder {
  std::size_t length = 0;
  std::size_t radius = 0;
  std::function<std::optional<Word>(std::span<const Elem>)> decode;
};

namespace detail {

inline void generic_recurse(std::span<const LineDecoder> decoders, const TensorWord& shape_of,
                            std::vector<Elem>& symbols, std::size_t offset, std::size_t j) {
  const auto& shape = shape_of.shape();
  const auto& strides = shape_of.strides();
  const std::size_t last = j - 1;
  auto run_line = [&](std::size_t base) {
    Word line(shape[last]);
    for (std::size_t t = 0; t < shape[last]; ++t) line[t] = symbols[base + t * strides[last]];
    auto fixed = decoders[last].decode(line);
    if (!fixed) return;
    if (fixed->size() != line.size()) throw InvalidArgument("line decoder returned a word of the wrong length");
    for (std::size_t t = 0; t < shape[last]; ++t) symbols[base + t * strides[last]] = (*fixed)[t];
  };
  if (j == 1) {
    run_line(offset);
    return;
  }
  for (std::size_t a = 0; a < shape[last]; ++a) generic_recurse(decoders, shape_of, symbols, offset + a * strides[last], j - 1);
  std::vector<std::size_t> idx(last, 0);
  while (true) {
    std::size_t base = offset;
    for (std::size_t b = 0; b < last; ++b) base += idx[b] * strides[b];
    run_line(base);
    std::size_t b = last;
    while (b > 0) {
      --b;
      if (++idx[b] < shape[b]) break;
      idx[b] = 0;
      if (b == 0) return;
    }
  }
}

}  // namespace detail

// The same recursion with arbitrary component decoders; corrects every
// pattern of weight <= prod radius_i.
inline TensorWord product_decode_generic(std::span<const LineDecoder> decoders, const TensorWord& r) {
  if (decoders.size() != r.dims()) throw InvalidArgument("need one line decoder per axis");
  for (std::size_t a = 0; a < decoders.size(); ++a)
    if (decoders[a].length != r.shape()[a]) throw InvalidArgument("line decoder length does not match the axis");
  TensorWord out = r;
  if (r.dims() == 0) return out;
  detail::generic_recurse(decoders, out, out.symbols(), 0, r.dims());
  return out;
}

// Guruswami-Sudan nearest-in-list decoder for RS_q(q, k) on one axis.
inline LineDecoder rs_line_decoder(const FieldPtr& field, std::uint32_t k) {
  const std::uint64_t q = field->order();
  if (k < 1 || k >= q) throw InvalidArgument("RS line decoder needs 1 <= k < q");
  auto rs = std::make_shared<const RSSpec>(full_rs_spec(field, k - 1));
  const std::size_t tau = static_cast<std::size_t>(std::max(0LL, prs_axis_threshold(q, k) - 1));
  return LineDecoder{static_cast<std::size_t>(q), tau, [rs, tau](std::span<const Elem> line) -> std::optional<Word> {
                       auto best = rs_nearest(*rs, line, tau);
                       if (!best) return std::nullopt;
                       return std::move(best->codeword);
                     }};
}

// Majority decoder for the length-n repetition code; corrects (n-1)/2 errors.
inline LineDecoder repetition_line_decoder(const FieldPtr& field, std::size_t n) {
  return LineDecoder{n, (n - 1) / 2, [field, n](std::span<const Elem> line) -> std::optional<Word> {
                       std::vector<std::size_t> freq(field->order(), 0);
                       for (auto s : line) ++freq[s.value];
                       const auto best = std::max_element(freq.begin(), freq.end());
                       if (*best * 2 <= n) return std::nullopt;
                       return Word(n, field->elem(static_cast<std::uint64_t>(best - freq.begin())));
                     }};
}

// Rule selecting dimension tuples in the recursive RM decoder.
enum class TupleRule {
  literal,      // sum k_j <= l
  containment,  // sum (k_j - 1) <= l, the tuples whose PRS code lies inside RM_q(l, m)
};

// Tuples (k_1..k_m) with 1 <= k_i < q admitted by the rule, lexicographic.
inline std::vector<std::vector<std::uint32_t>> rm_decoder_tuples(std::uint64_t q, std::uint32_t l, std::uint32_t m,
                                                                 TupleRule rule) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(m, 1);
  auto rec = [&](auto&& self, std::size_t j, std::uint64_t used) -> void {
    if (j == m) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t k = 1; k < q; ++k) {
      const std::uint64_t cost = rule == TupleRule::literal ? k : k - 1;
      if (used + cost > l) break;
      cur[j] = k;
      self(self, j + 1, used + cost);
    }
  };
  rec(rec, 0, 0);
  return out;
}

struct RecursiveCandidate {
  Word codeword;
  std::size_t distance = 0;
  bool in_code = false;
  std::vector<std::uint32_t> tuple;  // first tuple that produced it
};

// Runs the recursive PRS decoder for every admitted tuple and collects the
// distinct outputs, annotated with their distance to r and RM membership.
inline std::vector<RecursiveCandidate> rm_list_decode_recursive(const RMSpec& spec, std::span<const Elem> r,
                                                                TupleRule rule = TupleRule::literal) {
  if (!spec.full_grid) throw InvalidArgument("recursive RM decoding needs a full-grid code (n = q^m, lexicographic points)");
  if (r.size() != spec.n()) throw InvalidArgument("received word length does not match n");
  for (auto s : r) spec.base->check(s);
  const TensorWord received = TensorWord::cube(spec.q(), spec.m, Word(r.begin(), r.end()));
  std::vector<RecursiveCandidate> out;
  for (const auto& tuple : rm_decoder_tuples(spec.q(), spec.l, spec.m, rule)) {
    const TensorWord decoded = prs_decode_recursive(make_prs_spec(spec.base, tuple), received);
    const Word& c = decoded.symbols();
    const bool seen = std::any_of(out.begin(), out.end(), [&](const RecursiveCandidate& x) { return x.codeword == c; });
    if (seen) continue;
    out.push_back({c, hamming(c, r), rm_membership(spec, c).has_value(), tuple});
  }
  std::stable_sort(out.begin(), out.end(), [](const RecursiveCandidate& a, const RecursiveCandidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return detail::lex_less(a.codeword, b.codeword);
  });
  return out;
}

// Reduced message polynomial of a PRS codeword via tensor interpolation;
// throws NotACodeword when some degree bound is exceeded.
inline MultiPoly prs_message_recover(const PRSSpec& spec, const TensorWord& c) {
  if (c.shape() != std::vector<std::size_t>(spec.m(), spec.q())) throw InvalidArgument("tensor does not have shape q^m");
  const auto coeffs = detail::tensor_interpolate(spec.field, spec.m(), c.symbols());
  MultiPoly phi(spec.field, spec.m());
  std::size_t idx = 0;
  for_each_grid_point(*spec.field, spec.m(), [&](std::span<const Elem> x) {
    Exponents e(spec.m());
    for (std::uint32_t j = 0; j < spec.m(); ++j) e[j] = x[j].value;
    phi.add_term(e, coeffs[idx++]);
  });
  for (std::uint32_t i = 0; i < spec.m(); ++i)
    if (phi.degree_in(i) > static_cast<int>(spec.k[i]) - 1) throw NotACodeword("tensor is not a PRS codeword");
  return phi;
}

}  // namespace rmprs
