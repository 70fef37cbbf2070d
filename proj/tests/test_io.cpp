#include <gtest/gtest.h>

#include <sstream>

#include "rmprs/io.hpp"

using namespace rmprs;

TEST(Io, WordFilesIgnoreCommentsAndBlankLines) {
  auto F = field_of_order(5);
  std::istringstream is("# received\n1\n\n 4  # trailing\n0\n");
  const Word w = io::read_word(is, *F);
  EXPECT_EQ(w, (Word{F->elem(1), F->elem(4), F->elem(0)}));
  std::ostringstream os;
  io::write_word(os, w);
  std::istringstream back(os.str());
  EXPECT_EQ(io::read_word(back, *F), w);
}

TEST(Io, WordFilesRejectBadSymbols) {
  auto F = field_of_order(5);
  std::istringstream big("5\n"), neg("-1\n"), junk("x\n");
  EXPECT_THROW(io::read_word(big, *F), InvalidArgument);
  EXPECT_THROW(io::read_word(neg, *F), InvalidArgument);
  EXPECT_THROW(io::read_word(junk, *F), InvalidArgument);
}

TEST(Io, TensorRoundTrip) {
  auto F = field_of_order(3);
  Word sym;
  for (int i = 0; i < 27; ++i) sym.push_back(F->elem(i % 3));
  const TensorWord t = TensorWord::cube(3, 3, sym);
  std::ostringstream os;
  io::write_tensor(os, t);
  EXPECT_EQ(os.str().substr(0, 4), "3 3\n");
  std::istringstream is(os.str());
  EXPECT_EQ(io::read_tensor(is, *F), t);
  std::istringstream short_file("3 2\n0 1 2\n");
  EXPECT_THROW(io::read_tensor(short_file, *F), InvalidArgument);
  std::istringstream wrong_q("4 1\n0 1 2 3\n");
  EXPECT_THROW(io::read_tensor(wrong_q, *F), InvalidArgument);
}

TEST(Io, PolynomialRoundTrip) {
  auto F = field_of_order(7);
  std::istringstream is("3 1 0\n# comment\n2 0 2\n5 1 0\n");
  const MultiPoly phi = io::read_multipoly(is, F, 2);
  EXPECT_EQ(phi.coeff({1, 0}), F->elem(1));
  EXPECT_EQ(phi.coeff({0, 2}), F->elem(2));
  std::ostringstream os;
  io::write_multipoly(os, phi);
  std::istringstream back(os.str());
  EXPECT_EQ(io::read_multipoly(back, F, 2), phi);
  std::istringstream bad("1 2\n");
  EXPECT_THROW(io::read_multipoly(bad, F, 2), InvalidArgument);

  std::istringstream uni("1 0 3\n");
  const UniPoly f = io::read_unipoly(uni, F);
  EXPECT_EQ(f.degree(), 2);
  std::ostringstream us;
  io::write_unipoly(us, f);
  EXPECT_EQ(us.str(), "1 0 3\n");
}

TEST(Io, CodeFiles) {
  std::istringstream rm("type rm\nq 4\nl 2\nm 2\nn 16\n");
  const io::CodeFile a = io::read_code(rm);
  const RMSpec spec = io::rm_spec_of(a);
  EXPECT_EQ(spec.n(), 16u);
  EXPECT_TRUE(spec.full_grid);

  std::istringstream pts("type rm\nfield 3 1 0 1\nl 1\nm 2\npoint 0 1\npoint 2 2\npoint 1 0\n");
  const io::CodeFile b = io::read_code(pts);
  const RMSpec s2 = io::rm_spec_of(b);
  EXPECT_EQ(s2.n(), 3u);
  EXPECT_EQ(s2.points[1], (std::vector<Elem>{s2.base->elem(2), s2.base->elem(2)}));

  std::istringstream prs("type prs\nq 16\nk 4 4\n");
  const PRSSpec p = io::prs_spec_of(io::read_code(prs));
  EXPECT_EQ(p.k, (std::vector<std::uint32_t>{4, 4}));

  std::ostringstream os;
  io::write_code(os, b);
  std::istringstream back(os.str());
  const RMSpec s3 = io::rm_spec_of(io::read_code(back));
  ASSERT_EQ(s3.n(), s2.n());
  for (std::size_t i = 0; i < s2.n(); ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(s3.points[i][j].value, s2.points[i][j].value);
}

TEST(Io, CodeFileErrors) {
  for (const char* text : {"q 4\nl 2\nm 2\n", "type rm\nl 2\nm 2\n", "type rm\nq 6\nl 1\nm 2\n",
                           "type xyz\nq 4\n", "type prs\nq 4\n", "type rm\nq 4\nl 1\nm 2\nbogus 1\n",
                           "type rm\nq 4\nl 1\nm 2\nn 2\npoint 0 0\n", "type prs\nq 4\nk 2 2\nm 3\n"}) {
    std::istringstream is(text);
    EXPECT_THROW(io::read_code(is), InvalidArgument) << text;
  }
  std::istringstream big_l("type rm\nq 4\nl 5\nm 2\n");
  const io::CodeFile c = io::read_code(big_l);
  EXPECT_THROW(io::rm_spec_of(c), InvalidArgument);
}

TEST(Io, DecodeListFormat) {
  auto F = field_of_order(4);
  const RMSpec spec = make_rm_spec(F, 1, 2, 16);
  MultiPoly phi(F, 2);
  phi.add_term({1, 0}, F->one());
  const Word c = rm_encode(spec, phi);
  std::ostringstream os;
  io::write_pw_list(os, rm_list_decode_pw(spec, c));
  const std::string out = os.str();
  EXPECT_NE(out.find("entries 1\n"), std::string::npos);
  EXPECT_NE(out.find("distance 0\n"), std::string::npos);
  EXPECT_NE(out.find("message 1\n  1 1 0\n"), std::string::npos);
  EXPECT_NE(out.find("codeword 0 0 0 0 1 1 1 1"), std::string::npos);
}
