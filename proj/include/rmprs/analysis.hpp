#pragma once

// Closed-form radius comparisons between the lifting decoder and the
// recursive product decoder, and the rate-region volume study.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "rmprs/errors.hpp"
#include "rmprs/random.hpp"
#include "rmprs/rs_codec.hpp"

namespace rmprs {

enum class Dominance { recursive, pw, tie };

inline const char* dominance_name(Dominance d) {
  switch (d) {
    case Dominance::recursive: return "recursive";
    case Dominance::pw: return "pw";
    default: return "tie";
  }
}

struct RadiusReport {
  std::uint64_t q = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> k;
  std::uint64_t l = 0;  // sum (k_i - 1), the smallest RM degree containing the PRS code
  std::uint64_t n = 0;

  double radius_pw_rs = 0;      // 1 - sqrt(l q^(m-1) / n)
  double radius_pw_ag = 0;      // 1 - sqrt(l (q+1)^(m-1) / n)
  double radius_recursive = 0;  // prod (1 - sqrt(rho_i))
  double radius_prs_pw = 0;     // max(0, 1 - sqrt(sum rho_i))

  long long t_pw_rs = 0;            // errors < t are listed
  long long t_pw_ag = 0;
  std::uint64_t weight_recursive = 0;  // floor(radius * n)
  std::uint64_t weight_prs_pw = 0;

  Dominance dominant = Dominance::tie;
};

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

inline double recursive_radius(std::span<const double> rho) {
  double r = 1.0;
  for (double x : rho) r *= 1.0 - std::sqrt(x);
  return clamp01(r);
}

inline double prs_pw_radius(std::span<const double> rho) {
  double s = 0.0;
  for (double x : rho) s += x;
  return clamp01(1.0 - std::sqrt(s));
}

inline Dominance classify(double recursive, double pw) {
  if (recursive > pw) return Dominance::recursive;
  if (pw > recursive) return Dominance::pw;
  return Dominance::tie;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline RadiusReport compare_radii(std::uint64_t q, std::uint32_t m, const std::vector<std::uint32_t>& k) {
  if (q < 2) throw InvalidArgument("q must be at least 2");
  if (m == 0 || k.size() != m) throw InvalidArgument("k must have m entries");
  for (auto ki : k)
    if (ki < 1 || ki > q) throw InvalidArgument("k_i must satisfy 1 <= k_i <= q");
  RadiusReport rep;
  rep.q = q;
  rep.m = m;
  rep.k = k;
  rep.n = ipow(q, m);
  std::vector<double> rho;
  for (auto ki : k) {
    rep.l += ki - 1;
    rho.push_back(static_cast<double>(ki) / static_cast<double>(q));
  }
  const double n = static_cast<double>(rep.n);
  const std::uint64_t a_rs = rep.l * ipow(q, m - 1);
  const std::uint64_t a_ag = rep.l * ipow(q + 1, m - 1);
  rep.radius_pw_rs = clamp01(1.0 - std::sqrt(static_cast<double>(a_rs) / n));
  rep.radius_pw_ag = clamp01(1.0 - std::sqrt(static_cast<double>(a_ag) / n));
  rep.radius_recursive = recursive_radius(rho);
  rep.radius_prs_pw = prs_pw_radius(rho);
  rep.t_pw_rs = std::max(0LL, radius_ceiling(rep.n, a_rs));
  rep.t_pw_ag = std::max(0LL, radius_ceiling(rep.n, a_ag));
  rep.weight_recursive = static_cast<std::uint64_t>(std::floor(rep.radius_recursive * n + 1e-9));
  rep.weight_prs_pw = static_cast<std::uint64_t>(std::floor(rep.radius_prs_pw * n + 1e-9));
  rep.dominant = classify(rep.radius_recursive, rep.radius_prs_pw);
  return rep;
}

// Same comparison directly on relative rates.
inline Dominance compare_rates(std::span<const double> rho) {
  return classify(recursive_radius(rho), prs_pw_radius(rho));
}

inline double factorial(std::uint32_t m) {
  double f = 1;
  for (std::uint32_t i = 2; i <= m; ++i) f *= i;
  return f;
}

// Measure of {rho in (0,1)^m : recursive radius > PW radius}. Outside the
// simplex sum rho <= 1 the PW radius is zero and the recursive one positive,
// so that part contributes 1 - 1/m! exactly; only the simplex is sampled.
inline double region_volume_grid(std::uint32_t m, double step) {
  if (m < 1 || m > 6) throw InvalidArgument("grid mode supports 1 <= m <= 6");
  if (!(step > 0 && step <= 0.5)) throw InvalidArgument("grid step must lie in (0, 0.5]");
  const auto cells = static_cast<std::uint64_t>(std::llround(1.0 / step));
  if (cells == 0) throw InvalidArgument("grid step too large");
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < m; ++i) total *= cells;
  if (total > 5'000'000'000ULL) throw InvalidArgument("grid too fine for this dimension");
  const double h = 1.0 / static_cast<double>(cells);
  std::vector<double> rho(m);
  std::uint64_t hits = 0;
  // Odometer over midpoints; prefix sums prune cells beyond the simplex.
  auto rec = [&](auto&& self, std::uint32_t j, double sum) -> void {
    if (j == m) {
      if (recursive_radius(rho) > 1.0 - std::sqrt(sum)) ++hits;
      return;
    }
    for (std::uint64_t c = 0; c < cells; ++c) {
      const double x = (static_cast<double>(c) + 0.5) * h;
      if (sum + x > 1.0) break;
      rho[j] = x;
      self(self, j + 1, sum + x);
    }
  };
  rec(rec, 0, 0.0);
  double cell = 1.0;
  for (std::uint32_t i = 0; i < m; ++i) cell *= h;
  return (1.0 - 1.0 / factorial(m)) + static_cast<double>(hits) * cell;
}

// Monte Carlo estimate with uniform samples from the simplex.
inline double region_volume_mc(std::uint32_t m, std::uint64_t samples, std::uint64_t seed) {
  if (m < 1) throw InvalidArgument("m must be at least 1");
  if (samples == 0) throw InvalidArgument("Monte Carlo needs at least one sample");
  Rng rng(seed);
  std::vector<double> e(m + 1), rho(m);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    double total = 0;
    for (auto& x : e) {
      x = -std::log1p(-rng.uniform());
      total += x;
    }
    double sum = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      rho[i] = e[i] / total;
      sum += rho[i];
    }
    if (recursive_radius(rho) > 1.0 - std::sqrt(sum)) ++hits;
  }
  return (1.0 - 1.0 / factorial(m)) + static_cast<double>(hits) / static_cast<double>(samples) / factorial(m);
}

struct SurfacePoint {
  double rho1 = 0, rho2 = 0, radius_recursive = 0, radius_pw = 0;
};

inline SurfacePoint surface_point(double rho1, double rho2) {
  const double rho[2] = {rho1, rho2};
  return {rho1, rho2, recursive_radius(rho), prs_pw_radius(rho)};
}

// points x points lattice on [0,1]^2, rho1 outer.
inline std::vector<SurfacePoint> surface_grid(std::size_t points) {
  if (points < 2) throw InvalidArgument("surface grid needs at least 2 points per axis");
  std::vector<SurfacePoint> out;
  out.reserve(points * points);
  const double d = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    for (std::size_t j = 0; j < points; ++j)
      out.push_back(surface_point(static_cast<double>(i) / d, static_cast<double>(j) / d));
  return out;
}

inline void emit_surface(std::ostream& os, std::span<const SurfacePoint> pts) {
  os << "rho1,rho2,radius_recursive,radius_pw\n";
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(10);
  for (const auto& p : pts) os << p.rho1 << ',' << p.rho2 << ',' << p.radius_recursive << ',' << p.radius_pw << '\n';
  os.flags(flags);
  os.precision(prec);
}

struct DominanceCase {
  std::uint64_t q = 0;
  std::uint32_t m = 0;
  std::uint64_t l = 0;
  long long t_ours = 0;
  long long t_ag = 0;
};

struct DominanceScan {
  std::uint64_t checked = 0;
  std::uint64_t strict = 0;
  std::vector<DominanceCase> violations;
  std::vector<DominanceCase> strict_cases;  // in scan order
};

inline bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (q % p) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

// Integer radii on the full grid n = q^m for every prime power q <= q_max,
// 1 <= m <= m_max, 1 <= l <= q.
inline DominanceScan radius_dominance_scan(std::uint64_t q_max, std::uint32_t m_max) {
  DominanceScan scan;
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    if (!is_prime_power(q)) continue;
    for (std::uint32_t m = 1; m <= m_max; ++m) {
      const std::uint64_t n = ipow(q, m);
      for (std::uint64_t l = 1; l <= q; ++l) {
        DominanceCase c{q, m, l, radius_ceiling(n, l * ipow(q, m - 1)), radius_ceiling(n, l * ipow(q + 1, m - 1))};
        ++scan.checked;
        if (c.t_ours < c.t_ag) scan.violations.push_back(c);
        if (c.t_ours > c.t_ag) {
          ++scan.strict;
          scan.strict_cases.push_back(c);
        }
      }
    }
  }
  return scan;
}

}  // namespace rmprs
