#pragma once

// Command-line front end. run_cli() takes explicit streams so it can be
// driven from tests; tools/rmprs.cpp is a thin main().

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmprs/analysis.hpp"
#include "rmprs/io.hpp"
#include "rmprs/simulator.hpp"

namespace rmprs::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kInfeasible = 3 };

struct CodeOptions {
  std::string code_path;
  std::string type;
  std::uint64_t q = 0;
  std::string field;
  std::uint32_t l = 0;
  std::uint32_t m = 0;
  std::size_t n = 0;
  std::vector<std::uint32_t> k;
  std::string basis = "polynomial";
};

inline void add_code_options(CLI::App* app, CodeOptions& o) {
  app->add_option("--code", o.code_path, "Code spec file");
  app->add_option("--type", o.type, "Inline code type")->check(CLI::IsMember({"rm", "prs"}));
  app->add_option("--q", o.q, "Field order");
  app->add_option("--field", o.field, "Field record 'p e c_0 .. c_e'");
  app->add_option("--l", o.l, "RM degree");
  app->add_option("--m", o.m, "Number of variables");
  app->add_option("--n", o.n, "RM length (default q^m)");
  app->add_option("--k", o.k, "PRS dimensions, comma separated")->delimiter(',');
  app->add_option("--basis", o.basis, "Extension basis")->check(CLI::IsMember({"polynomial", "normal"}));
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open '" + path + "'");
  return is;
}

inline io::CodeFile load_code(const CodeOptions& o) {
  if (!o.code_path.empty()) {
    if (!o.type.empty()) throw InvalidArgument("give either --code or inline parameters, not both");
    auto is = open_in(o.code_path);
    return io::read_code(is);
  }
  if (o.type.empty()) throw InvalidArgument("no code given: use --code FILE or --type rm|prs with its parameters");
  std::ostringstream spec;
  spec << "type " << o.type << '\n';
  if (o.q) spec << "q " << o.q << '\n';
  if (!o.field.empty()) spec << "field " << o.field << '\n';
  spec << "basis " << o.basis << '\n';
  if (o.type == "rm") {
    spec << "l " << o.l << "\nm " << o.m << '\n';
    if (o.n) spec << "n " << o.n << '\n';
  } else {
    if (o.m) spec << "m " << o.m << '\n';
    spec << "k";
    for (auto k : o.k) spec << ' ' << k;
    spec << '\n';
  }
  std::istringstream is(spec.str());
  return io::read_code(is);
}

// Writes to the named file, or to `fallback` when the name is empty.
inline void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot write '" + path + "'");
  fn(os);
}

inline DecoderKind parse_decoder(const std::string& s) {
  if (s == "pw") return DecoderKind::pw;
  if (s == "recursive") return DecoderKind::recursive;
  if (s == "generic") return DecoderKind::generic;
  throw InvalidArgument("unknown decoder '" + s + "'");
}

inline TupleRule parse_rule(const std::string& s) {
  if (s == "literal") return TupleRule::literal;
  if (s == "containment") return TupleRule::containment;
  throw InvalidArgument("unknown tuple rule '" + s + "'");
}

// "a" or "a..b".
template <class T>
std::pair<T, T> parse_range(const std::string& s, const char* what) {
  auto num = [&](const std::string& t) {
    std::istringstream is(t);
    T v{};
    if (t.empty() || t[0] == '-' || !(is >> v) || !is.eof())
      throw InvalidArgument(std::string("invalid ") + what + " '" + s + "' (expected a or a..b)");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const T v = num(s);
    return {v, v};
  }
  const T lo = num(s.substr(0, dots)), hi = num(s.substr(dots + 2));
  if (lo > hi) throw InvalidArgument(std::string("empty ") + what + " range '" + s + "'");
  return {lo, hi};
}

struct EncodeArgs {
  CodeOptions code;
  std::string message, output;
};

inline int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  const io::CodeFile code = load_code(a.code);
  auto is = open_in(a.message);
  const MultiPoly phi = io::read_multipoly(is, code.field, code.m);
  if (code.type == io::CodeType::rm) {
    const RMSpec spec = io::rm_spec_of(code);
    const Word c = rm_encode(spec, phi);
    with_output(a.output, out, [&](std::ostream& os) { io::write_word(os, c); });
  } else {
    const TensorWord c = prs_encode(io::prs_spec_of(code), phi);
    with_output(a.output, out, [&](std::ostream& os) { io::write_tensor(os, c); });
  }
  return kOk;
}

struct DecodeArgs {
  CodeOptions code;
  std::string input, output, decoder, rule = "literal";
};

inline int cmd_decode(const DecodeArgs& a, std::ostream& out) {
  const io::CodeFile code = load_code(a.code);
  auto is = open_in(a.input);
  if (code.type == io::CodeType::rm) {
    const DecoderKind dec = parse_decoder(a.decoder.empty() ? "pw" : a.decoder);
    if (dec == DecoderKind::generic) throw InvalidArgument("decoder 'generic' applies to PRS codes; use pw or recursive");
    const RMSpec spec = io::rm_spec_of(code);
    if (dec == DecoderKind::recursive && !spec.full_grid)
      throw InvalidArgument("decoder 'recursive' needs a full-grid RM code (n = q^m, default point order)");
    const Word r = io::read_word(is, *code.field);
    if (r.size() != spec.n())
      throw InvalidArgument("received word has " + std::to_string(r.size()) + " symbols, expected n = " +
                            std::to_string(spec.n()));
    if (dec == DecoderKind::pw) {
      const auto list = rm_list_decode_pw(spec, r);
      with_output(a.output, out, [&](std::ostream& os) { io::write_pw_list(os, list); });
    } else {
      const auto list = rm_list_decode_recursive(spec, r, parse_rule(a.rule));
      with_output(a.output, out, [&](std::ostream& os) { io::write_recursive_list(os, spec, list); });
    }
    return kOk;
  }
  const DecoderKind dec = parse_decoder(a.decoder.empty() ? "recursive" : a.decoder);
  if (dec == DecoderKind::pw) throw InvalidArgument("decoder 'pw' applies to RM codes; use recursive or generic");
  const PRSSpec spec = io::prs_spec_of(code);
  const TensorWord r = io::read_tensor(is, *code.field);
  if (r.dims() != spec.m()) throw InvalidArgument("tensor dimension does not match the code");
  TensorWord d = r;
  if (dec == DecoderKind::recursive) {
    d = prs_decode_recursive(spec, r);
  } else {
    std::vector<LineDecoder> decs;
    for (auto k : spec.k) decs.push_back(rs_line_decoder(spec.field, k));
    d = product_decode_generic(decs, r);
  }
  with_output(a.output, out, [&](std::ostream& os) { io::write_tensor(os, d); });
  return kOk;
}

struct SimulateArgs {
  CodeOptions code;
  std::string decoder, rule = "literal", pattern = "random", weights = "0", output, witness;
  std::optional<std::size_t> cap;
  std::vector<std::size_t> sides;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  bool per_trial = false, timing = false;
};

inline void write_witness(std::ostream& os, const PRSSpec& spec, const SubcubeWitness& w) {
  io::CodeFile code;
  code.type = io::CodeType::prs;
  code.field = spec.field;
  code.m = spec.m();
  code.k = spec.k;
  os << "# sub-cube error pattern the recursive decoder does not correct\n";
  io::write_code(os, code);
  os << "seed " << w.seed << '\n';
  os << "sides";
  for (auto s : w.sides) os << ' ' << s;
  os << "\ncorner";
  for (auto c : w.corner) os << ' ' << c;
  os << '\n';
  io::write_symbols_line(os, "codeword", w.codeword.symbols());
  io::write_symbols_line(os, "received", w.received.symbols());
  io::write_symbols_line(os, "decoded", w.decoded.symbols());
}

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const io::CodeFile file = load_code(a.code);
  CodeUnderTest code;
  code.rule = parse_rule(a.rule);
  if (file.type == io::CodeType::rm) {
    code.rm = io::rm_spec_of(file);
  } else {
    code.prs = io::prs_spec_of(file);
  }
  const DecoderKind dec = parse_decoder(a.decoder.empty() ? (code.rm ? "pw" : "recursive") : a.decoder);
  check_compatible(code, dec);

  if (!a.witness.empty()) {
    if (!code.prs || dec != DecoderKind::recursive)
      throw InvalidArgument("--witness searches sub-cube failures of the recursive PRS decoder");
    const PRSRadius rad = prs_radius(*code.prs);
    auto w = find_subcube_failure(*code.prs, rad.weight, a.seed);
    if (!w) {
      err << "no failing sub-cube pattern found above weight " << rad.weight << '\n';
      return kOk;
    }
    with_output(a.witness, out, [&](std::ostream& os) { write_witness(os, *code.prs, *w); });
    err << "witness: " << w->sides.size() << "-dimensional sub-cube of weight " << volume(w->sides) << " (radius weight "
        << rad.weight << ")\n";
    return kOk;
  }

  PatternConfig cfg;
  if (a.pattern == "random") {
    cfg.kind = PatternKind::random;
  } else if (a.pattern == "capped") {
    cfg.kind = PatternKind::capped;
    if (a.cap) {
      cfg.cap = *a.cap;
    } else if (code.prs) {
      cfg.cap = static_cast<std::size_t>(std::max(0LL, prs_axis_threshold(code.prs->q(), code.prs->k[0]) - 1));
    } else {
      throw InvalidArgument("--pattern capped on an RM code needs --cap");
    }
  } else if (a.pattern == "subcube") {
    cfg.kind = PatternKind::subcube;
    if (a.sides.empty()) throw InvalidArgument("--pattern subcube needs --sides s_1,..,s_m");
    cfg.sides = a.sides;
  } else {
    throw InvalidArgument("unknown pattern '" + a.pattern + "'");
  }
  if (cfg.kind != PatternKind::random && code.rm && !code.rm->full_grid)
    throw InvalidArgument("capped and sub-cube patterns need a full-grid code");

  auto [lo, hi] = parse_range<std::size_t>(a.weights, "weights");
  if (cfg.kind == PatternKind::subcube) lo = hi = volume(cfg.sides);
  const std::size_t n = code.rm ? code.rm->n() : code.prs->n();
  if (hi > n) throw InvalidArgument("weights exceed the code length " + std::to_string(n));

  if (a.per_trial) {
    std::vector<TrialReport> all;
    for (std::size_t w = lo; w <= hi && a.trials; ++w) {
      auto s = run_trials(code, dec, cfg, w, a.trials, a.seed);
      all.insert(all.end(), s.trials.begin(), s.trials.end());
    }
    with_output(a.output, out, [&](std::ostream& os) { write_trials_csv(os, all, a.timing); });
    return kOk;
  }
  const auto rows = radius_sweep(code, dec, cfg, lo, hi, a.trials, a.seed);
  with_output(a.output, out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
  return kOk;
}

struct AnalyzeArgs {
  std::string mode = "volume", method = "auto", dims = "2", output;
  std::optional<double> resolution;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::size_t points = 101;
  std::vector<double> rho;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> k;
  std::uint64_t q_max = 32;
  std::uint32_t m_max = 4;
};

inline double default_resolution(std::uint32_t m) { return m <= 2 ? 1e-3 : m == 3 ? 1e-2 : 5e-2; }

inline int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.mode == "volume") {
    const auto [lo, hi] = parse_range<std::uint32_t>(a.dims, "dimension");
    if (lo < 1) throw InvalidArgument("dimension must be at least 1");
    if (a.method != "auto" && a.method != "grid" && a.method != "mc") throw InvalidArgument("unknown method '" + a.method + "'");
    if (a.resolution && !(*a.resolution > 0 && *a.resolution <= 0.5))
      throw InvalidArgument("--resolution must lie in (0, 0.5]");
    if (a.samples == 0) throw InvalidArgument("--samples must be positive");
    std::ostringstream csv;
    csv << "m,method,resolution,samples,seed,volume,lower_bound\n" << std::setprecision(10);
    for (std::uint32_t m = lo; m <= hi; ++m) {
      const bool grid = a.method == "grid" || (a.method == "auto" && m <= 3);
      if (grid && m > 6) throw InvalidArgument("grid mode supports m <= 6; use --method mc");
      const double lb = 1.0 - 1.0 / factorial(m);
      if (grid) {
        const double h = a.resolution.value_or(default_resolution(m));
        csv << m << ",grid," << h << ",,," << region_volume_grid(m, h) << ',' << lb << '\n';
      } else {
        csv << m << ",mc,," << a.samples << ',' << a.seed << ',' << region_volume_mc(m, a.samples, a.seed) << ',' << lb
            << '\n';
      }
    }
    with_output(a.output, out, [&](std::ostream& os) { os << csv.str(); });
    return kOk;
  }
  if (a.mode == "surface") {
    std::vector<SurfacePoint> pts;
    if (!a.rho.empty()) {
      if (a.rho.size() != 2) throw InvalidArgument("--rho takes two rates");
      for (double r : a.rho)
        if (!(r >= 0 && r <= 1)) throw InvalidArgument("rates must lie in [0, 1]");
      pts.push_back(surface_point(a.rho[0], a.rho[1]));
    } else {
      if (a.points < 2 || a.points > 10001) throw InvalidArgument("--points must lie in [2, 10001]");
      pts = surface_grid(a.points);
    }
    with_output(a.output, out, [&](std::ostream& os) { emit_surface(os, pts); });
    return kOk;
  }
  if (a.mode == "compare") {
    if (a.q == 0 || a.k.empty()) throw InvalidArgument("compare needs --q and --k");
    const RadiusReport r = compare_radii(a.q, static_cast<std::uint32_t>(a.k.size()), a.k);
    with_output(a.output, out, [&](std::ostream& os) {
      os << "q,m,k,l,radius_pw_rs,radius_pw_ag,radius_recursive,radius_prs_pw,t_pw_rs,t_pw_ag,weight_recursive,"
            "weight_prs_pw,dominant\n";
      os << std::setprecision(10) << r.q << ',' << r.m << ',';
      for (std::size_t i = 0; i < r.k.size(); ++i) os << (i ? " " : "") << r.k[i];
      os << ',' << r.l << ',' << r.radius_pw_rs << ',' << r.radius_pw_ag << ',' << r.radius_recursive << ','
         << r.radius_prs_pw << ',' << r.t_pw_rs << ',' << r.t_pw_ag << ',' << r.weight_recursive << ','
         << r.weight_prs_pw << ',' << dominance_name(r.dominant) << '\n';
    });
    return kOk;
  }
  if (a.mode == "scan") {
    if (a.q_max > 256 || a.m_max > 6) throw InvalidArgument("scan limits are q <= 256, m <= 6");
    const DominanceScan s = radius_dominance_scan(a.q_max, a.m_max);
    with_output(a.output, out, [&](std::ostream& os) {
      os << "q_max,m_max,checked,violations,strict\n"
         << a.q_max << ',' << a.m_max << ',' << s.checked << ',' << s.violations.size() << ',' << s.strict << '\n';
    });
    for (const auto& v : s.violations)
      err << "violation: q=" << v.q << " m=" << v.m << " l=" << v.l << " t=" << v.t_ours << " < " << v.t_ag << '\n';
    return kOk;
  }
  throw InvalidArgument("unknown analyze mode '" + a.mode + "'");
}

struct FieldInfoArgs {
  std::uint64_t q = 0;
  std::string field;
  std::uint32_t m = 0;
  std::string basis = "polynomial";
};

inline void print_matrix(std::ostream& os, const Matrix& a) {
  for (const auto& row : a) {
    os << ' ';
    for (auto x : row) os << ' ' << x.value;
    os << '\n';
  }
}

inline int cmd_field_info(const FieldInfoArgs& a, std::ostream& out) {
  FieldPtr F;
  if (!a.field.empty()) {
    F = parse_field_record(a.field);
    if (a.q && a.q != F->order()) throw InvalidArgument("--q does not match --field");
  } else {
    if (!a.q) throw InvalidArgument("field-info needs --q or --field");
    F = field_of_order(a.q);
  }
  out << "field " << F->name() << "\nrecord " << F->record() << "\nprimitive " << F->primitive().value << '\n';
  if (F->order() <= 64) {
    out << "powers of the primitive element:";
    Elem x = F->one();
    for (std::uint64_t i = 0; i + 1 < F->order(); ++i) {
      out << ' ' << x.value;
      x = F->mul(x, F->primitive());
    }
    out << "\ninverses:";
    for (std::uint64_t v = 1; v < F->order(); ++v) out << ' ' << F->inv(F->elem(v)).value;
    out << '\n';
  }
  if (a.m) {
    if (a.m > 8) throw InvalidArgument("--m must be at most 8");
    const auto em = make_extension(F, a.m, io::parse_basis(a.basis));
    out << "extension " << em->ext()->name() << "\nextension record " << em->ext()->record() << "\nbasis";
    for (auto b : em->basis()) out << ' ' << b.value;
    out << "\nmatrix A (A[i][j] = a_j^(q^i))\n";
    print_matrix(out, em->matrix());
    out << "inverse\n";
    print_matrix(out, em->matrix_inverse());
    for (std::size_t j = 0; j < em->mu().size(); ++j) {
      out << "mu_" << j + 1 << ':';
      for (auto c : em->mu()[j].coeffs()) out << ' ' << c.value;
      out << '\n';
    }
  }
  return kOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"List decoding of Reed-Muller and product Reed-Solomon codes"};
  app.name("rmprs");
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Encode a message polynomial");
  add_code_options(c_enc, enc.code);
  c_enc->add_option("--message", enc.message, "Message polynomial file ('coeff i_1 .. i_m' per line)")->required();
  c_enc->add_option("--output,-o", enc.output, "Output file (default: standard output)");

  DecodeArgs dec;
  auto* c_dec = app.add_subcommand("decode", "Decode a received word");
  add_code_options(c_dec, dec.code);
  c_dec->add_option("--input,-i", dec.input, "Received word (RM) or tensor file (PRS)")->required();
  c_dec->add_option("--decoder", dec.decoder, "pw | recursive | generic (default pw for RM, recursive for PRS)");
  c_dec->add_option("--tuple-rule", dec.rule, "literal | containment");
  c_dec->add_option("--output,-o", dec.output, "Output file");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run seeded decoding trials");
  add_code_options(c_sim, sim.code);
  c_sim->add_option("--decoder", sim.decoder, "pw | recursive | generic");
  c_sim->add_option("--tuple-rule", sim.rule, "literal | containment");
  c_sim->add_option("--pattern", sim.pattern, "random | capped | subcube");
  c_sim->add_option("--cap", sim.cap, "Per-line error cap along the first axis (capped pattern)");
  c_sim->add_option("--sides", sim.sides, "Sub-cube side lengths, comma separated")->delimiter(',');
  c_sim->add_option("--weights", sim.weights, "Error weight a or range a..b");
  c_sim->add_option("--trials", sim.trials, "Trials per weight");
  c_sim->add_option("--seed", sim.seed, "Seed");
  c_sim->add_flag("--per-trial", sim.per_trial, "Write one CSV row per trial");
  c_sim->add_flag("--timing", sim.timing, "Add wall-clock seconds to per-trial rows");
  c_sim->add_option("--witness", sim.witness, "Search for a failing sub-cube pattern and write it to this file");
  c_sim->add_option("--output,-o", sim.output, "Output CSV");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Radius formulas and rate-region study");
  c_an->add_option("--mode", an.mode, "volume | surface | compare | scan");
  c_an->add_option("--dims", an.dims, "Dimension m or range a..b (volume)");
  c_an->add_option("--method", an.method, "auto | grid | mc (volume)");
  c_an->add_option("--resolution", an.resolution, "Grid step (volume)");
  c_an->add_option("--samples", an.samples, "Monte Carlo samples (volume)");
  c_an->add_option("--seed", an.seed, "Monte Carlo seed (volume)");
  c_an->add_option("--points", an.points, "Lattice points per axis (surface)");
  c_an->add_option("--rho", an.rho, "Single rate pair (surface)")->delimiter(',');
  c_an->add_option("--q", an.q, "Field order (compare)");
  c_an->add_option("--k", an.k, "Dimensions, comma separated (compare)")->delimiter(',');
  c_an->add_option("--q-max", an.q_max, "Largest field order (scan)");
  c_an->add_option("--m-max", an.m_max, "Largest dimension (scan)");
  c_an->add_option("--output,-o", an.output, "Output CSV");

  FieldInfoArgs fi;
  auto* c_fi = app.add_subcommand("field-info", "Print field and extension tables");
  c_fi->add_option("--q", fi.q, "Field order");
  c_fi->add_option("--field", fi.field, "Field record 'p e c_0 .. c_e'");
  c_fi->add_option("--m", fi.m, "Extension degree");
  c_fi->add_option("--basis", fi.basis, "polynomial | normal")->check(CLI::IsMember({"polynomial", "normal"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*c_enc) return cmd_encode(enc, out);
    if (*c_dec) return cmd_decode(dec, out);
    if (*c_sim) return cmd_simulate(sim, out, err);
    if (*c_an) return cmd_analyze(an, out, err);
    if (*c_fi) return cmd_field_info(fi, out);
  } catch (const RadiusUnachievable& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rmprs::cli
