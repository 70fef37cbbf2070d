#pragma once

// Text formats: word files, tensor files, polynomial files, code spec files
// and decoder output.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rmprs/prs_codec.hpp"
#include "rmprs/rm_codec.hpp"

namespace rmprs::io {

// Lines with '#' comments stripped and blank lines dropped; each entry keeps
// its 1-based line number for messages.
struct Line {
  std::size_t number;
  std::string text;
};

inline std::vector<Line> content_lines(std::istream& is) {
  std::vector<Line> out;
  std::string s;
  std::size_t no = 0;
  while (std::getline(is, s)) {
    ++no;
    if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
    if (s.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back({no, s});
  }
  return out;
}

inline std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (tok.empty() || tok[0] == '-' || tok[0] == '+') throw std::invalid_argument(tok);
    v = std::stoull(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw InvalidArgument("line " + std::to_string(line) + ": expected a non-negative integer, got '" + tok + "'");
  return v;
}

inline Elem parse_symbol(const Field& F, const std::string& tok, std::size_t line) {
  const std::uint64_t v = parse_uint(tok, line);
  if (v >= F.order())
    throw InvalidArgument("line " + std::to_string(line) + ": symbol " + tok + " is not an element of GF(" +
                          std::to_string(F.order()) + ")");
  return F.elem(v);
}

// All whitespace-separated symbols of the file.
inline Word read_word(std::istream& is, const Field& F) {
  Word w;
  for (const auto& line : content_lines(is))
    for (const auto& tok : split(line.text)) w.push_back(parse_symbol(F, tok, line.number));
  return w;
}

inline void write_word(std::ostream& os, std::span<const Elem> w) {
  for (auto s : w) os << s.value << '\n';
}

inline TensorWord read_tensor(std::istream& is, const Field& F) {
  const auto lines = content_lines(is);
  if (lines.empty()) throw InvalidArgument("tensor file is empty");
  const auto head = split(lines[0].text);
  if (head.size() != 2) throw InvalidArgument("line " + std::to_string(lines[0].number) + ": tensor header must be 'q m'");
  const std::uint64_t q = parse_uint(head[0], lines[0].number);
  const std::uint64_t m = parse_uint(head[1], lines[0].number);
  if (q != F.order()) throw InvalidArgument("tensor header q = " + head[0] + " does not match the code field");
  if (m == 0 || m > 16) throw InvalidArgument("tensor header m out of range");
  Word symbols;
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (const auto& tok : split(lines[i].text)) symbols.push_back(parse_symbol(F, tok, lines[i].number));
  std::uint64_t n = 1;
  for (std::uint64_t i = 0; i < m; ++i) n *= q;
  if (symbols.size() != n)
    throw InvalidArgument("tensor file has " + std::to_string(symbols.size()) + " symbols, expected q^m = " +
                          std::to_string(n));
  return TensorWord::cube(q, m, std::move(symbols));
}

// Header, then one line per axis-(m) run of q symbols.
inline void write_tensor(std::ostream& os, const TensorWord& t) {
  const std::size_t q = t.dims() ? t.shape()[0] : 1;
  os << q << ' ' << t.dims() << '\n';
  const std::size_t run = t.dims() ? t.shape().back() : 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << t.symbols()[i].value;
    os << ((i + 1) % run == 0 ? '\n' : ' ');
  }
}

// One term per line: "coeff i_1 ... i_m".
inline MultiPoly read_multipoly(std::istream& is, const FieldPtr& F, std::size_t m) {
  MultiPoly phi(F, m);
  for (const auto& line : content_lines(is)) {
    const auto tok = split(line.text);
    if (tok.size() != m + 1)
      throw InvalidArgument("line " + std::to_string(line.number) + ": expected 'coeff' followed by " +
                            std::to_string(m) + " exponents");
    const Elem c = parse_symbol(*F, tok[0], line.number);
    Exponents e(m);
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t v = parse_uint(tok[j + 1], line.number);
      if (v > 1'000'000) throw InvalidArgument("line " + std::to_string(line.number) + ": exponent too large");
      e[j] = static_cast<std::uint32_t>(v);
    }
    phi.add_term(e, c);
  }
  return phi;
}

inline void write_multipoly(std::ostream& os, const MultiPoly& phi, const std::string& indent = "") {
  for (const auto& [e, c] : phi.terms()) {
    os << indent << c.value;
    for (auto x : e) os << ' ' << x;
    os << '\n';
  }
}

// Coefficients low to high.
inline UniPoly read_unipoly(std::istream& is, const FieldPtr& F) {
  const Word c = read_word(is, *F);
  return UniPoly(F, std::vector<Elem>(c.begin(), c.end()));
}

inline void write_unipoly(std::ostream& os, const UniPoly& f) {
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) os << (i ? " " : "") << f.coeffs()[i].value;
  os << '\n';
}

enum class CodeType { rm, prs };

// Parsed code description. Keys, one per line:
//   type rm|prs
//   q <order>             field order (default modulus) unless 'field' is given
//   field p e c_0 .. c_e  explicit field record
//   l <degree>  m <vars>  n <length>   (rm; n defaults to q^m)
//   k k_1 .. k_m          (prs; m is taken from the count)
//   basis polynomial|normal
//   point x_1 .. x_m      explicit RM evaluation points, repeated n times
struct CodeFile {
  CodeType type = CodeType::rm;
  FieldPtr field;
  std::uint32_t l = 0;
  std::uint32_t m = 0;
  std::optional<std::size_t> n;
  std::vector<std::uint32_t> k;
  BasisKind basis = BasisKind::polynomial;
  std::optional<std::vector<std::vector<Elem>>> points;
};

inline BasisKind parse_basis(const std::string& s) {
  if (s == "polynomial") return BasisKind::polynomial;
  if (s == "normal") return BasisKind::normal;
  throw InvalidArgument("unknown basis '" + s + "' (expected polynomial or normal)");
}

inline std::uint32_t small_uint(const std::string& tok, std::size_t line, std::uint64_t limit = 1u << 20) {
  const std::uint64_t v = parse_uint(tok, line);
  if (v > limit) throw InvalidArgument("line " + std::to_string(line) + ": value " + tok + " is too large");
  return static_cast<std::uint32_t>(v);
}

inline CodeFile read_code(std::istream& is) {
  CodeFile code;
  std::optional<std::uint64_t> q;
  std::optional<std::string> type;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> raw_points;
  bool have_l = false, have_m = false;
  for (const auto& line : content_lines(is)) {
    auto tok = split(line.text);
    const std::string key = tok[0];
    tok.erase(tok.begin());
    auto one = [&]() -> const std::string& {
      if (tok.size() != 1) throw InvalidArgument("line " + std::to_string(line.number) + ": '" + key + "' takes one value");
      return tok[0];
    };
    if (key == "type") {
      type = one();
    } else if (key == "q") {
      q = parse_uint(one(), line.number);
    } else if (key == "field") {
      std::string rec;
      for (const auto& t : tok) rec += t + " ";
      code.field = parse_field_record(rec);
    } else if (key == "l") {
      code.l = small_uint(one(), line.number);
      have_l = true;
    } else if (key == "m") {
      code.m = small_uint(one(), line.number, 64);
      have_m = true;
    } else if (key == "n") {
      code.n = parse_uint(one(), line.number);
    } else if (key == "k") {
      if (tok.empty()) throw InvalidArgument("line " + std::to_string(line.number) + ": 'k' needs at least one value");
      code.k.clear();
      for (const auto& t : tok) code.k.push_back(small_uint(t, line.number));
    } else if (key == "basis") {
      code.basis = parse_basis(one());
    } else if (key == "point") {
      raw_points.emplace_back(line.number, tok);
    } else {
      throw InvalidArgument("line " + std::to_string(line.number) + ": unknown key '" + key + "'");
    }
  }
  if (!type) throw InvalidArgument("code file must set 'type rm' or 'type prs'");
  if (*type == "rm") {
    code.type = CodeType::rm;
  } else if (*type == "prs") {
    code.type = CodeType::prs;
  } else {
    throw InvalidArgument("unknown code type '" + *type + "'");
  }
  if (!code.field) {
    if (!q) throw InvalidArgument("code file must give 'q' or 'field'");
    code.field = field_of_order(*q);
  } else if (q && *q != code.field->order()) {
    throw InvalidArgument("'q' does not match the order of the 'field' record");
  }
  if (code.type == CodeType::rm) {
    if (!have_l || !have_m) throw InvalidArgument("RM code file needs 'l' and 'm'");
    if (!code.k.empty()) throw InvalidArgument("'k' applies to PRS codes only");
  } else {
    if (code.k.empty()) throw InvalidArgument("PRS code file needs 'k'");
    if (have_m && code.m != code.k.size()) throw InvalidArgument("'m' does not match the number of 'k' entries");
    code.m = static_cast<std::uint32_t>(code.k.size());
    if (have_l || code.n || !raw_points.empty()) throw InvalidArgument("'l', 'n' and 'point' apply to RM codes only");
  }
  if (!raw_points.empty()) {
    std::vector<std::vector<Elem>> pts;
    for (const auto& [no, toks] : raw_points) {
      if (toks.size() != code.m) throw InvalidArgument("line " + std::to_string(no) + ": point needs m coordinates");
      std::vector<Elem> p;
      for (const auto& t : toks) p.push_back(parse_symbol(*code.field, t, no));
      pts.push_back(std::move(p));
    }
    if (code.n && *code.n != pts.size()) throw InvalidArgument("'n' does not match the number of points");
    code.n = pts.size();
    code.points = std::move(pts);
  }
  return code;
}

inline RMSpec rm_spec_of(const CodeFile& code) {
  if (code.type != CodeType::rm) throw InvalidArgument("not an RM code");
  std::uint64_t grid = 1;
  for (std::uint32_t i = 0; i < code.m; ++i) {
    grid *= code.field->order();
    if (grid > (1u << 24)) throw InvalidArgument("q^m is too large");
  }
  return make_rm_spec(code.field, code.l, code.m, code.n.value_or(grid), code.points, code.basis);
}

inline PRSSpec prs_spec_of(const CodeFile& code) {
  if (code.type != CodeType::prs) throw InvalidArgument("not a PRS code");
  return make_prs_spec(code.field, code.k);
}

inline void write_code(std::ostream& os, const CodeFile& code) {
  os << "type " << (code.type == CodeType::rm ? "rm" : "prs") << '\n';
  os << "field " << code.field->record() << '\n';
  os << "m " << code.m << '\n';
  if (code.type == CodeType::rm) {
    os << "l " << code.l << '\n';
    if (code.n) os << "n " << *code.n << '\n';
    os << "basis " << (code.basis == BasisKind::normal ? "normal" : "polynomial") << '\n';
    if (code.points)
      for (const auto& p : *code.points) {
        os << "point";
        for (auto c : p) os << ' ' << c.value;
        os << '\n';
      }
  } else {
    os << "k";
    for (auto k : code.k) os << ' ' << k;
    os << '\n';
  }
}

inline void write_symbols_line(std::ostream& os, const char* key, std::span<const Elem> w) {
  os << key;
  for (auto s : w) os << ' ' << s.value;
  os << '\n';
}

// Decoder output. Each entry:
//   entry <i>
//   distance <d>
//   [in_code 0|1]  [tuple k_1 .. k_m]    (recursive candidates)
//   message <terms>                      followed by that many 'coeff i_1..i_m' lines
//   codeword s_1 .. s_n
inline void write_pw_list(std::ostream& os, std::span<const RMDecodeEntry> list) {
  os << "decoder pw\nentries " << list.size() << '\n';
  for (std::size_t i = 0; i < list.size(); ++i) {
    os << "entry " << i << "\ndistance " << list[i].distance << '\n';
    os << "message " << list[i].message.terms().size() << '\n';
    write_multipoly(os, list[i].message, "  ");
    write_symbols_line(os, "codeword", list[i].codeword);
  }
}

inline void write_recursive_list(std::ostream& os, const RMSpec& spec, std::span<const RecursiveCandidate> list) {
  os << "decoder recursive\nentries " << list.size() << '\n';
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& c = list[i];
    os << "entry " << i << "\ndistance " << c.distance << "\nin_code " << (c.in_code ? 1 : 0) << "\ntuple";
    for (auto k : c.tuple) os << ' ' << k;
    os << '\n';
    if (c.in_code) {
      const MultiPoly phi = rm_message_recover(spec, c.codeword);
      os << "message " << phi.terms().size() << '\n';
      write_multipoly(os, phi, "  ");
    } else {
      os << "message none\n";
    }
    write_symbols_line(os, "codeword", c.codeword);
  }
}

}  // namespace rmprs::io
