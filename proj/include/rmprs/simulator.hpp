#pragma once

// Error-pattern generators and a seeded trial harness for the RM and PRS
// decoders.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rmprs/prs_codec.hpp"
#include "rmprs/random.hpp"
#include "rmprs/rm_codec.hpp"

namespace rmprs {

// Additive errors at distinct flat positions (sorted), all values nonzero.
struct ErrorPattern {
  std::vector<std::size_t> positions;
  std::vector<Elem> values;

  std::size_t weight() const { return positions.size(); }
};

inline std::size_t volume(std::span<const std::size_t> shape) {
  std::size_t v = 1;
  for (auto s : shape) v *= s;
  return v;
}

namespace detail {

inline Elem random_nonzero(const Field& F, Rng& rng) {
  return F.elem(1 + rng.below(F.order() - 1));
}

// k distinct values from [0, n), sorted.
inline std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline std::vector<std::size_t> row_major_strides(std::span<const std::size_t> shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t a = shape.size(); a-- > 1;) strides[a - 1] = strides[a] * shape[a];
  return strides;
}

// Flat positions of every line along `axis`, lines in row-major order of
// the other axes.
inline std::vector<std::vector<std::size_t>> lines_along(std::span<const std::size_t> shape, std::size_t axis) {
  const auto strides = row_major_strides(shape);
  std::vector<std::vector<std::size_t>> lines;
  const std::size_t total = volume(shape);
  for (std::size_t f = 0; f < total; ++f) {
    if ((f / strides[axis]) % shape[axis] != 0) continue;
    std::vector<std::size_t> line(shape[axis]);
    for (std::size_t t = 0; t < shape[axis]; ++t) line[t] = f + t * strides[axis];
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace detail

// Uniformly random support of the given weight with uniform nonzero values.
// With a cap, every line along `cap_axis` holds at most `cap` errors and the
// support is uniform among supports satisfying that.
inline ErrorPattern random_pattern(std::uint64_t seed, std::span<const std::size_t> shape, const Field& F,
                                   std::size_t weight, std::optional<std::size_t> cap = std::nullopt,
                                   std::size_t cap_axis = 0) {
  const std::size_t n = volume(shape);
  if (weight > n) throw InvalidArgument("error weight exceeds the number of positions");
  Rng rng(seed);
  ErrorPattern pat;
  if (!cap) {
    pat.positions = detail::sample_subset(n, weight, rng);
  } else {
    if (cap_axis >= shape.size()) throw InvalidArgument("cap axis out of range");
    const auto lines = detail::lines_along(shape, cap_axis);
    const std::size_t len = shape[cap_axis];
    const std::size_t c = std::min(*cap, len);
    if (weight > c * lines.size()) throw InvalidArgument("per-line cap is infeasible for this weight");
    // ways[j][w]: weighted number of supports of weight w on the last j lines.
    std::vector<long double> binom(c + 1, 1.0L);
    for (std::size_t i = 1; i <= c; ++i) binom[i] = binom[i - 1] * static_cast<long double>(len - i + 1) / i;
    const std::size_t L = lines.size();
    std::vector<std::vector<long double>> ways(L + 1, std::vector<long double>(weight + 1, 0.0L));
    ways[0][0] = 1.0L;
    for (std::size_t j = 1; j <= L; ++j)
      for (std::size_t w = 0; w <= weight; ++w)
        for (std::size_t e = 0; e <= std::min(c, w); ++e) ways[j][w] += binom[e] * ways[j - 1][w - e];
    std::size_t left = weight;
    for (std::size_t j = 0; j < L; ++j) {
      const std::size_t rest = L - j - 1;
      long double u = static_cast<long double>(rng.uniform()) * ways[rest + 1][left];
      std::size_t e = 0;
      for (; e < std::min(c, left); ++e) {
        const long double wgt = binom[e] * ways[rest][left - e];
        if (u < wgt) break;
        u -= wgt;
      }
      for (auto t : detail::sample_subset(len, e, rng)) pat.positions.push_back(lines[j][t]);
      left -= e;
    }
    std::sort(pat.positions.begin(), pat.positions.end());
  }
  for (std::size_t i = 0; i < pat.positions.size(); ++i) pat.values.push_back(detail::random_nonzero(F, rng));
  return pat;
}

// Every cell of the box [corner, corner + sides) gets a random nonzero error.
inline ErrorPattern subcube_pattern(std::uint64_t seed, std::span<const std::size_t> shape, const Field& F,
                                    std::span<const std::size_t> sides, std::span<const std::size_t> corner) {
  if (sides.size() != shape.size() || corner.size() != shape.size())
    throw InvalidArgument("sub-cube needs one side and one corner coordinate per axis");
  for (std::size_t a = 0; a < shape.size(); ++a)
    if (sides[a] == 0 || corner[a] + sides[a] > shape[a]) throw InvalidArgument("sub-cube does not fit in the cube");
  const auto strides = detail::row_major_strides(shape);
  std::vector<std::size_t> positions{0};
  for (std::size_t a = 0; a < shape.size(); ++a) {
    std::vector<std::size_t> next;
    for (auto p : positions)
      for (std::size_t t = 0; t < sides[a]; ++t) next.push_back(p + (corner[a] + t) * strides[a]);
    positions = std::move(next);
  }
  std::sort(positions.begin(), positions.end());
  Rng rng(seed);
  ErrorPattern pat;
  pat.positions = std::move(positions);
  for (std::size_t i = 0; i < pat.positions.size(); ++i) pat.values.push_back(detail::random_nonzero(F, rng));
  return pat;
}

inline Word apply_pattern(const Field& F, std::span<const Elem> c, const ErrorPattern& e) {
  Word r(c.begin(), c.end());
  for (std::size_t i = 0; i < e.weight(); ++i) {
    if (e.positions[i] >= r.size()) throw InvalidArgument("error position out of range");
    r[e.positions[i]] = F.add(r[e.positions[i]], e.values[i]);
  }
  return r;
}

enum class DecoderKind { pw, recursive, generic };
enum class PatternKind { random, capped, subcube };

inline const char* decoder_name(DecoderKind d) {
  switch (d) {
    case DecoderKind::pw: return "pw";
    case DecoderKind::recursive: return "recursive";
    default: return "generic";
  }
}

inline const char* pattern_name(PatternKind p) {
  switch (p) {
    case PatternKind::random: return "random";
    case PatternKind::capped: return "capped";
    default: return "subcube";
  }
}

// The code under test: exactly one of rm / prs is set.
struct CodeUnderTest {
  std::optional<RMSpec> rm;
  std::optional<PRSSpec> prs;
  TupleRule rule = TupleRule::literal;
};

struct PatternConfig {
  PatternKind kind = PatternKind::random;
  std::size_t cap = 0;             // capped: per-line limit along axis 0
  std::vector<std::size_t> sides;  // subcube: side lengths; corner drawn at random
};

struct TrialReport {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t weight = 0;
  PatternKind pattern = PatternKind::random;
  bool success = false;
  std::size_t residual = 0;  // distance from the transmitted codeword to the decoder's output
  double seconds = 0;        // not part of the reproducible output
};

struct TrialSummary {
  std::vector<TrialReport> trials;
  double success_rate = 0;
  double mean_residual = 0;
};

inline std::vector<std::size_t> code_shape(const CodeUnderTest& code) {
  if (code.prs) return std::vector<std::size_t>(code.prs->m(), code.prs->q());
  if (code.rm->full_grid) return std::vector<std::size_t>(code.rm->m, code.rm->q());
  return {code.rm->n()};
}

inline void check_compatible(const CodeUnderTest& code, DecoderKind dec) {
  if (code.rm.has_value() == code.prs.has_value()) throw InvalidArgument("exactly one code must be given");
  if (code.rm) {
    if (dec == DecoderKind::generic) throw InvalidArgument("the generic product decoder applies to PRS codes only");
    if (dec == DecoderKind::recursive && !code.rm->full_grid)
      throw InvalidArgument("recursive RM decoding needs a full-grid code (n = q^m)");
  } else {
    if (dec == DecoderKind::pw) throw InvalidArgument("the pw decoder applies to RM codes only");
    for (auto k : code.prs->k)
      if (k >= code.prs->q()) throw InvalidArgument("recursive PRS decoding needs k_i < q");
  }
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return mix_seed(mix_seed(seed ^ mix_seed(stream)) + index);
}

inline ErrorPattern make_pattern(const PatternConfig& cfg, std::uint64_t seed, std::span<const std::size_t> shape,
                                 const Field& F, std::size_t weight) {
  switch (cfg.kind) {
    case PatternKind::random: return random_pattern(seed, shape, F, weight);
    case PatternKind::capped: return random_pattern(seed, shape, F, weight, cfg.cap, 0);
    default: {
      if (cfg.sides.size() != shape.size()) throw InvalidArgument("sub-cube sides must match the code dimension");
      Rng rng(mix_seed(seed));
      std::vector<std::size_t> corner(shape.size());
      for (std::size_t a = 0; a < shape.size(); ++a) {
        if (cfg.sides[a] == 0 || cfg.sides[a] > shape[a]) throw InvalidArgument("sub-cube does not fit in the cube");
        corner[a] = rng.below(shape[a] - cfg.sides[a] + 1);
      }
      return subcube_pattern(seed, shape, F, cfg.sides, corner);
    }
  }
}

// One trial: random message, encode, corrupt, decode.
inline TrialReport run_one_trial(const CodeUnderTest& code, DecoderKind dec, const PatternConfig& cfg,
                                 std::size_t weight, std::uint64_t seed) {
  TrialReport rep;
  rep.seed = seed;
  rep.pattern = cfg.kind;
  Rng rng(seed);
  const auto shape = code_shape(code);
  const auto start = std::chrono::steady_clock::now();
  if (code.rm) {
    const RMSpec& spec = *code.rm;
    const auto basis = rm_monomials(spec.q(), spec.m, spec.l);
    const Word c = rm_encode(spec, uniform_multipoly(spec.base, spec.m, basis, rng));
    const ErrorPattern e = make_pattern(cfg, rng.next(), shape, *spec.base, weight);
    rep.weight = e.weight();
    const Word r = apply_pattern(*spec.base, c, e);
    std::vector<Word> list;
    if (dec == DecoderKind::pw) {
      for (auto& entry : rm_list_decode_pw(spec, r)) list.push_back(std::move(entry.codeword));
    } else {
      for (auto& cand : rm_list_decode_recursive(spec, r, code.rule)) list.push_back(std::move(cand.codeword));
    }
    rep.success = std::find(list.begin(), list.end(), c) != list.end();
    rep.residual = hamming(list.empty() ? r : list.front(), c);
  } else {
    const PRSSpec& spec = *code.prs;
    const TensorWord c = prs_encode(spec, uniform_multipoly(spec.field, spec.m(), prs_monomials(spec), rng));
    const ErrorPattern e = make_pattern(cfg, rng.next(), shape, *spec.field, weight);
    rep.weight = e.weight();
    const TensorWord r(c.shape(), apply_pattern(*spec.field, c.symbols(), e));
    TensorWord out = r;
    if (dec == DecoderKind::recursive) {
      out = prs_decode_recursive(spec, r);
    } else {
      std::vector<LineDecoder> decs;
      for (auto k : spec.k) decs.push_back(rs_line_decoder(spec.field, k));
      out = product_decode_generic(decs, r);
    }
    rep.success = out == c;
    rep.residual = hamming(out.symbols(), c.symbols());
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline void summarize(TrialSummary& s) {
  if (s.trials.empty()) return;
  std::size_t ok = 0, res = 0;
  for (const auto& t : s.trials) {
    ok += t.success;
    res += t.residual;
  }
  s.success_rate = static_cast<double>(ok) / static_cast<double>(s.trials.size());
  s.mean_residual = static_cast<double>(res) / static_cast<double>(s.trials.size());
}

inline TrialSummary run_trials(const CodeUnderTest& code, DecoderKind dec, const PatternConfig& cfg,
                               std::size_t weight, std::size_t trials, std::uint64_t seed) {
  check_compatible(code, dec);
  TrialSummary s;
  for (std::size_t i = 0; i < trials; ++i) {
    s.trials.push_back(run_one_trial(code, dec, cfg, weight, trial_seed(seed, weight, i)));
    s.trials.back().index = i;
  }
  summarize(s);
  return s;
}

inline void write_trials_csv(std::ostream& os, std::span<const TrialReport> trials, bool with_time = false) {
  os << "trial,seed,pattern,weight,success,residual";
  if (with_time) os << ",seconds";
  os << '\n';
  for (const auto& t : trials) {
    os << t.index << ',' << t.seed << ',' << pattern_name(t.pattern) << ',' << t.weight << ',' << (t.success ? 1 : 0)
       << ',' << t.residual;
    if (with_time) os << ',' << t.seconds;
    os << '\n';
  }
}

struct SweepRow {
  std::size_t weight = 0;
  std::size_t trials = 0;
  double success_rate = 0;
  double mean_residual = 0;
};

inline std::vector<SweepRow> radius_sweep(const CodeUnderTest& code, DecoderKind dec, const PatternConfig& cfg,
                                          std::size_t w_lo, std::size_t w_hi, std::size_t trials,
                                          std::uint64_t seed) {
  check_compatible(code, dec);
  if (w_lo > w_hi) throw InvalidArgument("weight range is empty");
  std::vector<SweepRow> rows;
  if (trials == 0) return rows;
  for (std::size_t w = w_lo; w <= w_hi; ++w) {
    const TrialSummary s = run_trials(code, dec, cfg, w, trials, seed);
    rows.push_back({w, trials, s.success_rate, s.mean_residual});
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "weight,trials,success_rate,mean_residual\n";
  const auto prec = os.precision();
  os << std::setprecision(6);
  for (const auto& r : rows) os << r.weight << ',' << r.trials << ',' << r.success_rate << ',' << r.mean_residual << '\n';
  os.precision(prec);
}

// A sub-cube pattern the recursive PRS decoder fails on.
struct SubcubeWitness {
  std::uint64_t seed = 0;
  std::vector<std::size_t> sides;
  std::vector<std::size_t> corner;
  TensorWord codeword{{}, {}};
  TensorWord received{{}, {}};
  TensorWord decoded{{}, {}};
};

// Tries sub-cubes of volume > min_volume in order of increasing volume,
// `tries_per_shape` seeded instances each, and returns the first failure.
inline std::optional<SubcubeWitness> find_subcube_failure(const PRSSpec& spec, std::size_t min_volume,
                                                          std::uint64_t seed, std::size_t tries_per_shape = 8) {
  const std::size_t q = spec.q();
  const std::vector<std::size_t> shape(spec.m(), q);
  std::vector<std::vector<std::size_t>> shapes;
  std::vector<std::size_t> cur(spec.m(), 1);
  auto rec = [&](auto&& self, std::size_t a) -> void {
    if (a == spec.m()) {
      if (volume(cur) > min_volume) shapes.push_back(cur);
      return;
    }
    for (std::size_t s = 1; s <= q; ++s) {
      cur[a] = s;
      self(self, a + 1);
    }
  };
  rec(rec, 0);
  std::stable_sort(shapes.begin(), shapes.end(), [](const auto& a, const auto& b) { return volume(a) < volume(b); });
  const auto basis = prs_monomials(spec);
  std::uint64_t counter = 0;
  for (const auto& sides : shapes)
    for (std::size_t t = 0; t < tries_per_shape; ++t) {
      const std::uint64_t s = trial_seed(seed, 0x5c, counter++);
      Rng rng(s);
      const TensorWord c = prs_encode(spec, uniform_multipoly(spec.field, spec.m(), basis, rng));
      std::vector<std::size_t> corner(spec.m());
      for (std::size_t a = 0; a < spec.m(); ++a) corner[a] = rng.below(q - sides[a] + 1);
      const ErrorPattern e = subcube_pattern(rng.next(), shape, *spec.field, sides, corner);
      const TensorWord r(shape, apply_pattern(*spec.field, c.symbols(), e));
      TensorWord d = prs_decode_recursive(spec, r);
      if (d != c) return SubcubeWitness{s, sides, corner, c, r, std::move(d)};
    }
  return std::nullopt;
}

}  // namespace rmprs
