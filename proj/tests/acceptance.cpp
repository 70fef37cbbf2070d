// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rmprs/analysis.hpp"
#include "rmprs/extension.hpp"
#include "rmprs/io.hpp"
#include "rmprs/random.hpp"
#include "rmprs/rm_codec.hpp"
#include "rmprs/simulator.hpp"

using namespace rmprs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

Word corrupt(const Field& F, Word c, std::size_t errors, Rng& rng) {
  std::vector<std::size_t> pos(c.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  for (std::size_t i = 0; i < errors; ++i) {
    std::swap(pos[i], pos[i + rng.below(pos.size() - i)]);
    c[pos[i]] = F.add(c[pos[i]], F.elem(1 + rng.below(F.order() - 1)));
  }
  return c;
}

UniPoly random_uni(const FieldPtr& F, std::size_t w, Rng& rng) {
  std::vector<Elem> c(w + 1);
  for (auto& x : c) x = F->elem(rng.below(F->order()));
  return UniPoly(F, c);
}

const std::pair<std::uint64_t, std::uint32_t> kIsoCases[] = {{2, 2}, {3, 2}, {4, 2}, {2, 3}};

void criterion1() {
  const auto t0 = Clock::now();
  std::size_t bad = 0, checked = 0;
  for (auto [q, m] : kIsoCases)
    for (BasisKind kind : {BasisKind::polynomial, BasisKind::normal}) {
      auto em = make_extension(field_of_order(q), m, kind);
      std::vector<bool> hit(em->ext()->order(), false);
      for_each_grid_point(*em->base(), m, [&](std::span<const Elem> x) {
        ++checked;
        const Elem X = em->lift_point(x);
        if (hit[X.value]) ++bad;
        hit[X.value] = true;
        if (em->unlift_point(X) != std::vector<Elem>(x.begin(), x.end())) ++bad;
        for (std::uint32_t j = 0; j < m; ++j)
          if (em->mu()[j](X) != em->embed(x[j])) ++bad;
      });
    }
  const double s = seconds_since(t0);
  report(1, bad == 0 && s < 5.0, fmt("isomorphism round trip and coordinate polynomials, %zu points, %zu failures, %.3f s",
                                     checked, bad, s));
}

void criterion2() {
  Rng rng(1001);
  std::size_t bad = 0, total = 0;
  for (auto [q, m] : kIsoCases) {
    auto F = field_of_order(q);
    auto em = make_extension(F, m);
    std::uint64_t qm1 = 1;
    for (std::uint32_t i = 1; i < m; ++i) qm1 *= q;
    for (int t = 0; t < 100; ++t) {
      const auto l = static_cast<std::uint32_t>(1 + rng.below(q));
      const auto basis = rm_monomials(q, m, l);
      const MultiPoly phi = random_multipoly(F, m, basis, basis.size(), rng);
      const UniPoly f = lift_poly(*em, phi);
      ++total;
      bool ok = f.degree() <= static_cast<int>(l * qm1);
      for_each_grid_point(*F, m, [&](std::span<const Elem> x) {
        if (f(em->lift_point(x)) != em->embed(oracle::eval_multi(phi, {x.begin(), x.end()}))) ok = false;
      });
      bad += !ok;
    }
  }
  report(2, bad == 0, fmt("lifted polynomials agree on the grid with degree <= l q^(m-1), %zu polynomials, %zu failures",
                          total, bad));
}

void criterion3() {
  const auto t0 = Clock::now();
  const std::uint64_t orders[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};
  Rng rng(3003);
  std::size_t words = 0, mismatches = 0, at_max = 0, multi = 0;
  while (words < 240) {
    auto F = field_of_order(orders[rng.below(std::size(orders))]);
    const std::size_t n = 2 + rng.below(std::min<std::uint64_t>(F->order(), 16) - 1);
    const std::size_t w = rng.below(std::min<std::size_t>(3, n - 1) + 1);
    const long long max_tau = gs_max_tau(n, w);
    if (max_tau < 0) continue;
    // Every third word sits at the largest admissible radius.
    const std::size_t tau = words % 3 == 0 ? static_cast<std::size_t>(max_tau) : rng.below(max_tau + 1);
    auto pts = F->elements();
    for (std::size_t i = 0; i < n; ++i) std::swap(pts[i], pts[i + rng.below(pts.size() - i)]);
    pts.resize(n);
    const RSSpec spec = make_rs_spec(F, w, pts);
    Word r;
    switch (rng.below(3)) {
      case 0:
        r = corrupt(*F, rs_encode(spec, random_uni(F, w, rng)), rng.below(tau + 2), rng);
        break;
      case 1: {
        // Two codewords spliced together, to produce lists with several entries.
        const Word a = rs_encode(spec, random_uni(F, w, rng)), b = rs_encode(spec, random_uni(F, w, rng));
        const std::size_t cut = rng.below(n + 1);
        r = a;
        for (std::size_t i = cut; i < n; ++i) r[i] = b[i];
        break;
      }
      default:
        for (std::size_t i = 0; i < n; ++i) r.push_back(F->elem(rng.below(F->order())));
    }
    const DecodeList list = gs_list_decode(spec, r, tau);
    std::vector<Word> got;
    for (const auto& e : list) got.push_back(e.codeword);
    std::sort(got.begin(), got.end());
    if (got != oracle::rs_ball(*F, pts, w, r, tau)) ++mismatches;
    ++words;
    at_max += tau == static_cast<std::size_t>(max_tau);
    multi += list.size() > 1;
  }
  const double s = seconds_since(t0);
  report(3, mismatches == 0 && s < 120.0,
         fmt("GS list equals brute-force ball, %zu words (%zu at max radius, %zu with >1 entry), %zu discrepancies, %.1f s",
             words, at_max, multi, mismatches, s));
}

void criterion4() {
  const auto t0 = Clock::now();
  auto F = field_of_order(4);
  const RMSpec spec = make_rm_spec(F, 2, 2, 16);
  const long long t = rm_pw_threshold(spec);
  const long long t256 = radius_ceiling(256, 2 * 16);
  const auto basis = rm_monomials(4, 2, 2);
  std::set<Word> all;
  oracle::for_each_vector(*F, basis.size(), [&](const std::vector<Elem>& coeffs) {
    MultiPoly phi(F, 2);
    for (std::size_t i = 0; i < basis.size(); ++i) phi.add_term(basis[i], coeffs[i]);
    Word c;
    for (const auto& p : spec.points) c.push_back(oracle::eval_multi(phi, p));
    all.insert(c);
  });
  Rng rng(4004);
  std::size_t missed = 0, mismatched = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Word c = rm_encode(spec, uniform_multipoly(F, 2, basis, rng));
    const Word r = corrupt(*F, c, rng.below(5), rng);
    const auto list = rm_list_decode_pw(spec, r);
    std::vector<Word> got;
    for (const auto& e : list) got.push_back(e.codeword);
    std::sort(got.begin(), got.end());
    if (!std::binary_search(got.begin(), got.end(), c)) ++missed;
    std::vector<Word> ball;
    for (const auto& x : all)
      if (oracle::distance(x, r) < static_cast<std::size_t>(t)) ball.push_back(x);
    if (got != ball) ++mismatched;
  }
  const double s = seconds_since(t0);
  report(4, t == 5 && t256 == 166 && all.size() == 4096 && missed == 0 && mismatched == 0 && s < 120.0,
         fmt("RM_4(2,2,16) t=%lld, t(256,2,16)=%lld, %zu codewords, 200 trials, %zu missed, %zu list mismatches, %.1f s", t,
             t256, all.size(), missed, mismatched, s));
}

void criterion5() {
  const DominanceScan scan = radius_dominance_scan(32, 4);
  long long ours = -1, ag = -1;
  for (const auto& c : scan.strict_cases)
    if (c.q == 4 && c.m == 2 && c.l == 2) {
      ours = c.t_ours;
      ag = c.t_ag;
    }
  report(5, scan.violations.empty() && scan.strict > 0 && ours == 5 && ag == 4,
         fmt("radius dominance over %llu cases, %zu violations, %llu strict, (4,2,2): %lld vs %lld",
             static_cast<unsigned long long>(scan.checked), scan.violations.size(),
             static_cast<unsigned long long>(scan.strict), ours, ag));
}

void criterion6() {
  const auto t0 = Clock::now();
  CodeUnderTest code;
  code.prs = make_prs_spec(field_of_order(16), {4, 4});
  PatternConfig capped;
  capped.kind = PatternKind::capped;
  capped.cap = 7;
  const TrialSummary s = run_trials(code, DecoderKind::recursive, capped, 57, 500, 6006);
  const TrialSummary u = run_trials(code, DecoderKind::recursive, {}, 57, 500, 6006);
  const double secs = seconds_since(t0);
  report(6, s.success_rate == 1.0 && secs < 300.0,
         fmt("PRS q=16 k=(4,4), 500 trials weight 57 cap 7: success %.4f; unconstrained (not gated): %.4f; %.1f s",
             s.success_rate, u.success_rate, secs));
}

std::vector<std::size_t> numbers_after(const std::string& line) {
  std::istringstream is(line);
  std::string key;
  is >> key;
  std::vector<std::size_t> v;
  for (std::size_t x; is >> x;) v.push_back(x);
  return v;
}

void criterion7() {
  const PRSSpec spec = make_prs_spec(field_of_order(16), {4, 4});
  const PRSRadius rad = prs_radius(spec);
  const auto w = find_subcube_failure(spec, rad.weight, 1);
  bool found = w && volume(w->sides) > 64 && w->decoded != w->codeword;
  // The archived fixture was produced by the same seeded search.
  bool archived = false;
  std::ifstream is(RMPRS_FIXTURE_DIR "/prs_q16_k4_4_subcube.txt");
  if (is && w) {
    std::map<std::string, std::vector<std::size_t>> rows;
    for (std::string line; std::getline(is, line);) {
      if (line.empty() || line[0] == '#') continue;
      rows[line.substr(0, line.find(' '))] = numbers_after(line);
    }
    auto syms = [](const TensorWord& t) {
      std::vector<std::size_t> v;
      for (auto s : t.symbols()) v.push_back(s.value);
      return v;
    };
    archived = rows["sides"] == w->sides && rows["corner"] == w->corner && rows["received"] == syms(w->received) &&
               rows["codeword"] == syms(w->codeword) && rows["decoded"] == syms(w->decoded);
  }
  std::string shape = "none";
  if (w) {
    shape.clear();
    for (auto s : w->sides) shape += (shape.empty() ? "" : "x") + std::to_string(s);
  }
  report(7, found && archived,
         fmt("failing sub-cube %s of weight %zu above radius weight %llu, fixture %s", shape.c_str(),
             w ? volume(w->sides) : 0, static_cast<unsigned long long>(rad.weight), archived ? "matches" : "missing or different"));
}

void criterion8() {
  const double v = region_volume_grid(2, 1e-3), v_half = region_volume_grid(2, 5e-4);
  double mc[3];
  for (std::uint32_t m = 2; m <= 4; ++m) mc[m - 2] = region_volume_mc(m, 1'000'000, 8008);
  const bool rising = mc[0] < mc[1] && mc[1] < mc[2];
  const bool flips = compare_radii(100, 2, {25, 25}).dominant == Dominance::pw &&
                     compare_radii(100, 2, {49, 49}).dominant == Dominance::recursive;
  report(8, v > 0.5 && std::abs(v - v_half) <= 1e-3 && rising && flips,
         fmt("V2 grid %.6f (half step %.6f), MC V2..V4 %.6f %.6f %.6f, dominance flip %s", v, v_half, mc[0], mc[1], mc[2],
             flips ? "reproduced" : "missing"));
}

void criterion9() {
  auto F = field_of_order(5);
  Rng rng(9009);
  std::size_t bad = 0, worst_gap = 100;
  for (int t = 0; t < 1000; ++t) {
    const auto l = static_cast<std::uint32_t>(1 + rng.below(5));
    const auto basis = rm_monomials(5, 2, l);
    const MultiPoly phi = random_multipoly(F, 2, basis, basis.size(), rng);
    const auto deg = static_cast<std::uint64_t>(phi.total_degree());
    const std::uint64_t z = count_zeros(phi);
    if (phi.is_zero() || z > deg * 5) ++bad;
    else worst_gap = std::min<std::size_t>(worst_gap, deg * 5 - z);
  }
  report(9, bad == 0, fmt("zeros of 1000 nonzero polynomials over GF(5)^2 within deg*5, %zu violations, tightest gap %zu",
                          bad, worst_gap));
}

void criterion10() {
  auto F = field_of_order(8);
  std::string line;
  std::vector<double> per;
  for (std::uint32_t m : {2u, 3u}) {
    const PRSSpec spec = make_prs_spec(F, std::vector<std::uint32_t>(m, 2));
    CodeUnderTest code;
    code.prs = spec;
    const std::size_t trials = m == 2 ? 200 : 40;
    const auto t0 = Clock::now();
    run_trials(code, DecoderKind::recursive, {}, spec.n() / 16, trials, 10010);
    const double s = seconds_since(t0) / static_cast<double>(trials);
    per.push_back(s);
    line += fmt("m=%u n=%zu %.3f ms/decode; ", m, spec.n(), 1e3 * s);
  }
  line += fmt("time ratio %.1f for length ratio 8", per[1] / per[0]);
  std::printf("INFO criterion 10: %s\n", line.c_str());
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d failing criteria, %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
