#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "rmprs/simulator.hpp"

using namespace rmprs;

namespace {

std::size_t max_line_count(const ErrorPattern& e, std::span<const std::size_t> shape, std::size_t axis) {
  std::size_t best = 0;
  for (const auto& line : detail::lines_along(shape, axis)) {
    std::size_t cnt = 0;
    for (auto p : line) cnt += std::binary_search(e.positions.begin(), e.positions.end(), p);
    best = std::max(best, cnt);
  }
  return best;
}

void expect_well_formed(const ErrorPattern& e, std::size_t n) {
  ASSERT_EQ(e.positions.size(), e.values.size());
  EXPECT_TRUE(std::is_sorted(e.positions.begin(), e.positions.end()));
  EXPECT_EQ(std::set<std::size_t>(e.positions.begin(), e.positions.end()).size(), e.weight());
  for (auto p : e.positions) EXPECT_LT(p, n);
  for (auto v : e.values) EXPECT_NE(v.value, 0u);
}

}  // namespace

TEST(Simulator, RandomPatternBasics) {
  auto F = field_of_order(16);
  const std::vector<std::size_t> shape = {16, 16};
  EXPECT_EQ(random_pattern(1, shape, *F, 0).weight(), 0u);
  const ErrorPattern a = random_pattern(7, shape, *F, 40);
  expect_well_formed(a, 256);
  EXPECT_EQ(a.weight(), 40u);
  const ErrorPattern b = random_pattern(7, shape, *F, 40);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(random_pattern(8, shape, *F, 40).positions, a.positions);
  EXPECT_THROW(random_pattern(1, shape, *F, 257), InvalidArgument);
}

TEST(Simulator, CappedPatternRespectsCap) {
  auto F = field_of_order(16);
  const std::vector<std::size_t> shape = {16, 16};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ErrorPattern e = random_pattern(seed, shape, *F, 56, 7, 0);
    expect_well_formed(e, 256);
    EXPECT_EQ(e.weight(), 56u);
    EXPECT_LE(max_line_count(e, shape, 0), 7u);
  }
  // Fully packed: every line holds exactly the cap.
  const ErrorPattern full = random_pattern(3, shape, *F, 112, 7, 0);
  for (const auto& line : detail::lines_along(shape, 0)) {
    std::size_t cnt = 0;
    for (auto p : line) cnt += std::binary_search(full.positions.begin(), full.positions.end(), p);
    EXPECT_EQ(cnt, 7u);
  }
  EXPECT_THROW(random_pattern(1, shape, *F, 113, 7, 0), InvalidArgument);
}

TEST(Simulator, CappedPatternIsUniformOnSmallCase) {
  // 2 x 3 grid, lines along axis 0 have length 2; cap 1 and weight 2 leave
  // C(3,2) * 2 * 2 = 12 supports, each with probability 1/12.
  auto F = field_of_order(2);
  const std::vector<std::size_t> shape = {2, 3};
  std::map<std::vector<std::size_t>, int> counts;
  const int trials = 24000;
  for (int s = 0; s < trials; ++s) {
    const ErrorPattern e = random_pattern(s, shape, *F, 2, 1, 0);
    EXPECT_LE(max_line_count(e, shape, 0), 1u);
    ++counts[e.positions];
  }
  EXPECT_EQ(counts.size(), 12u);
  for (const auto& [pos, c] : counts) EXPECT_NEAR(c, trials / 12.0, 200);
}

TEST(Simulator, SubcubePatterns) {
  auto F = field_of_order(16);
  const std::vector<std::size_t> shape = {16, 16};
  const std::size_t one[2] = {1, 1}, corner0[2] = {3, 4};
  const ErrorPattern e = subcube_pattern(1, shape, *F, one, corner0);
  ASSERT_EQ(e.weight(), 1u);
  EXPECT_EQ(e.positions[0], 3u * 16 + 4);
  const std::size_t nine[2] = {9, 9}, corner[2] = {7, 0};
  const ErrorPattern big = subcube_pattern(2, shape, *F, nine, corner);
  expect_well_formed(big, 256);
  EXPECT_EQ(big.weight(), 81u);
  const std::size_t bad_corner[2] = {8, 0};
  EXPECT_THROW(subcube_pattern(2, shape, *F, nine, bad_corner), InvalidArgument);
}

TEST(Simulator, WeightZeroAlwaysSucceeds) {
  CodeUnderTest code;
  code.prs = make_prs_spec(field_of_order(8), {3, 3});
  const TrialSummary s = run_trials(code, DecoderKind::recursive, {}, 0, 10, 4);
  EXPECT_EQ(s.success_rate, 1.0);
  EXPECT_EQ(s.mean_residual, 0.0);
}

TEST(Simulator, RmListDecoderWithinRadius) {
  CodeUnderTest code;
  code.rm = make_rm_spec(field_of_order(4), 2, 2, 16);
  const TrialSummary s = run_trials(code, DecoderKind::pw, {}, 4, 30, 5);
  EXPECT_EQ(s.success_rate, 1.0);
  for (const auto& t : s.trials) EXPECT_EQ(t.weight, 4u);
}

TEST(Simulator, HeavyNoiseFails) {
  CodeUnderTest code;
  code.prs = make_prs_spec(field_of_order(16), {4, 4});
  const TrialSummary s = run_trials(code, DecoderKind::recursive, {}, 128, 10, 6);
  EXPECT_LT(s.success_rate, 1.0);
}

TEST(Simulator, ReportsAreReproducible) {
  CodeUnderTest code;
  code.prs = make_prs_spec(field_of_order(16), {4, 4});
  PatternConfig cfg;
  cfg.kind = PatternKind::capped;
  cfg.cap = 7;
  std::ostringstream a, b;
  write_trials_csv(a, run_trials(code, DecoderKind::recursive, cfg, 50, 5, 11).trials);
  write_trials_csv(b, run_trials(code, DecoderKind::recursive, cfg, 50, 5, 11).trials);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "trial,seed,pattern,weight,success,residual");
}

TEST(Simulator, SweepRows) {
  CodeUnderTest code;
  code.prs = make_prs_spec(field_of_order(8), {2, 2});
  const auto rows = radius_sweep(code, DecoderKind::generic, {}, 0, 4, 3, 1);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].weight, 0u);
  EXPECT_EQ(rows[0].success_rate, 1.0);
  EXPECT_TRUE(radius_sweep(code, DecoderKind::generic, {}, 0, 4, 0, 1).empty());
  std::ostringstream os;
  write_sweep_csv(os, {});
  EXPECT_EQ(os.str(), "weight,trials,success_rate,mean_residual\n");
}

TEST(Simulator, IncompatibleDecoderIsRejected) {
  CodeUnderTest rm;
  rm.rm = make_rm_spec(field_of_order(4), 2, 2, 12);
  EXPECT_THROW(run_trials(rm, DecoderKind::recursive, {}, 0, 1, 1), InvalidArgument);
  EXPECT_THROW(run_trials(rm, DecoderKind::generic, {}, 0, 1, 1), InvalidArgument);
  CodeUnderTest prs;
  prs.prs = make_prs_spec(field_of_order(4), {4, 2});
  EXPECT_THROW(run_trials(prs, DecoderKind::recursive, {}, 0, 1, 1), InvalidArgument);
  prs.prs = make_prs_spec(field_of_order(4), {2, 2});
  EXPECT_THROW(run_trials(prs, DecoderKind::pw, {}, 0, 1, 1), InvalidArgument);
}

TEST(Simulator, SubcubeSearchFindsFailureAboveRadius) {
  const PRSSpec spec = make_prs_spec(field_of_order(16), {4, 4});
  auto w = find_subcube_failure(spec, 64, 1);
  ASSERT_TRUE(w.has_value());
  EXPECT_GT(volume(w->sides), 64u);
  EXPECT_NE(w->decoded, w->codeword);
  EXPECT_EQ(prs_decode_recursive(spec, w->received), w->decoded);
}
