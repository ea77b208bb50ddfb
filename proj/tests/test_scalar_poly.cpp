#include <gtest/gtest.h>

#include <set>

#include "plaut/errors.hpp"
#include "plaut/gcd.hpp"
#include "plaut/mpoly.hpp"
#include "plaut/upoly.hpp"
#include "support/gen.hpp"

using namespace plaut;

namespace {

const Field Q = Field::rationals();
const Field F7 = Field::prime(7);
const Field F10007 = Field::prime(10007);

MPoly P(const std::string& s, const Field& k = Q) { return parse_poly(s, xy_vars(), k); }

}  // namespace

TEST(Field, ParseAndName) {
  EXPECT_EQ(Field::parse("q").name(), "q");
  EXPECT_EQ(Field::parse("fp:7"), F7);
  EXPECT_EQ(Field::parse("fp2:7").order(), 49u);
  EXPECT_THROW(Field::parse("fp:8"), Error);
  EXPECT_THROW(Field::parse("gf7"), ParseError);
}

TEST(Scalar, PrimeFieldMatchesIntegerArithmetic) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t a = gen::below(rng, 10007), b = 1 + gen::below(rng, 10006);
    const Scalar sa = Scalar::from_int(static_cast<long long>(a), F10007);
    const Scalar sb = Scalar::from_int(static_cast<long long>(b), F10007);
    EXPECT_EQ((sa + sb).residue(), (a + b) % 10007);
    EXPECT_EQ((sa - sb).residue(), (a + 10007 - b) % 10007);
    EXPECT_EQ((sa * sb).residue(), a * b % 10007);
    EXPECT_EQ(((sa / sb) * sb).residue(), a);
  }
}

TEST(Scalar, RationalsInLowestTerms) {
  const Scalar h = Scalar::from_rational(mpq_class(6, 4), Q);
  EXPECT_EQ(h.to_string(), "3/2");
  EXPECT_EQ((h * Scalar::from_int(2, Q)).to_string(), "3");
  EXPECT_THROW(Scalar::zero(Q).inverse(), DivisionByZero);
}

TEST(Scalar, ExtensionFrobeniusConjugates) {
  // In F_{p^2} = F_p[w], w^p = -w, so (a + b w)^p = a - b w.
  const Field K = Field::prime_square(7);
  const Scalar w = Scalar::extension_generator(K);
  EXPECT_EQ(w * w, Scalar::from_int(static_cast<long long>(K.nonresidue()), K));
  for (std::uint64_t a = 0; a < 7; ++a) {
    for (std::uint64_t b = 0; b < 7; ++b) {
      const Scalar z = Scalar::from_residues(a, b, K);
      EXPECT_EQ(z.pow(7), Scalar::from_residues(a, (7 - b) % 7, K));
      if (!z.is_zero()) EXPECT_TRUE((z * z.inverse()).is_one());
    }
  }
}

TEST(Scalar, ElementEnumerationIsBijective) {
  const Field K = Field::prime_square(5);
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < K.order(); ++i) {
    const Scalar s = Scalar::element(i, K);
    EXPECT_EQ(s.index(), i);
    seen.insert(s.to_string());
  }
  EXPECT_EQ(seen.size(), 25u);
}

TEST(Scalar, MixedFieldsRejected) {
  EXPECT_THROW(Scalar::one(F7) + Scalar::one(Q), FieldMismatch);
}

TEST(MPoly, ParseGrammar) {
  EXPECT_EQ(P("(x+y)^2").to_string(), "x^2 + 2*x*y + y^2");
  EXPECT_EQ(P("-x - -y").to_string(), "-x + y");
  EXPECT_EQ(P("1/2*x + 3/6").to_string(), "1/2*x + 1/2");
  EXPECT_EQ(P("2*x^3*y", F7).coefficient({3, 1}).residue(), 2u);
  EXPECT_EQ(P("8*x", F7).to_string(), "x");
  EXPECT_TRUE(P("x - x").is_zero());
}

TEST(MPoly, ParseErrorsCarryPositions) {
  try {
    P("x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("z"), ParseError);
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("(x"), ParseError);
  EXPECT_THROW(P("1/0"), Error);
  EXPECT_THROW(P("x^70000"), ParseError);
  EXPECT_THROW(P("x^40000").pow(2), DegreeOverflow);
}

TEST(MPoly, ExtensionGeneratorLiteral) {
  const Field K = Field::prime_square(7);
  const MPoly f = P("w*x + w^2", K);
  EXPECT_EQ(f.coefficient({1, 0}), Scalar::extension_generator(K));
  EXPECT_THROW(P("w*x", F7), ParseError);
}

TEST(MPoly, PrintParseRoundTrip) {
  std::mt19937_64 rng(3);
  for (const Field& k : {Q, F7, Field::prime_square(7)}) {
    for (int i = 0; i < 50; ++i) {
      const MPoly f = gen::poly_xy(rng, k, 5);
      EXPECT_EQ(parse_poly(f.to_string(), xy_vars(), k), f) << f.to_string();
    }
  }
}

TEST(MPoly, EvaluationIsARingHomomorphism) {
  std::mt19937_64 rng(5);
  for (const Field& k : {Q, F10007}) {
    for (int i = 0; i < 60; ++i) {
      const MPoly f = gen::poly_xy(rng, k, 4), g = gen::poly_xy(rng, k, 4);
      const std::vector<Scalar> pt{gen::scalar(rng, k), gen::scalar(rng, k)};
      EXPECT_EQ((f * g).evaluate(pt), f.evaluate(pt) * g.evaluate(pt));
      EXPECT_EQ((f + g).evaluate(pt), f.evaluate(pt) + g.evaluate(pt));
      EXPECT_EQ(f.pow(3).evaluate(pt), f.evaluate(pt).pow(3));
    }
  }
}

TEST(MPoly, SubstitutionMatchesEvaluation) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 40; ++i) {
    const MPoly f = gen::poly_xy(rng, Q, 3), u = gen::poly_xy(rng, Q, 2), v = gen::poly_xy(rng, Q, 2);
    const MPoly h = substitute(f, {{"x", u}, {"y", v}});
    const std::vector<Scalar> pt{gen::scalar(rng, Q), gen::scalar(rng, Q)};
    EXPECT_EQ(h.evaluate(pt), f.evaluate(std::vector<Scalar>{u.evaluate(pt), v.evaluate(pt)}));
  }
}

TEST(MPoly, DegreesAndLeadingForm) {
  const MPoly f = P("x^3*y + x*y + 7");
  EXPECT_EQ(f.total_degree(), 4u);
  EXPECT_EQ(f.degree_in(1), 1u);
  EXPECT_EQ(f.leading_form(), P("x^3*y"));
  EXPECT_FALSE(MPoly(Q, xy_vars()).total_degree().has_value());
  EXPECT_EQ(f.derivative(0), P("3*x^2*y + y"));
}

TEST(MPoly, EmbedIntoWiderAmbient) {
  const MPoly f = P("x + y");
  const MPoly g = f.embed({"x", "y", "t"});
  EXPECT_EQ(g.arity(), 3u);
  EXPECT_EQ(g * MPoly::variable("t", Q, {"x", "y", "t"}), parse_poly("t*x + t*y", {"x", "y", "t"}, Q));
  EXPECT_THROW(f + g, ArityMismatch);
}

TEST(UPoly, DivmodProperty) {
  std::mt19937_64 rng(7);
  for (const Field& k : {Q, F7}) {
    for (int i = 0; i < 50; ++i) {
      std::vector<Scalar> ca, cb;
      for (int j = 0; j < 7; ++j) ca.push_back(gen::scalar(rng, k));
      for (int j = 0; j < 3; ++j) cb.push_back(gen::scalar(rng, k));
      cb.push_back(gen::unit(rng, k));
      const UPoly a(k, ca), b(k, cb);
      const auto [q, r] = divmod(a, b);
      EXPECT_EQ(q * b + r, a);
      EXPECT_TRUE(r.is_zero() || *r.degree() < *b.degree());
    }
  }
}

TEST(UPoly, RootsAgainstExhaustiveScan) {
  std::mt19937_64 rng(8);
  const Field k = Field::prime(31);
  for (int i = 0; i < 40; ++i) {
    std::vector<Scalar> c;
    for (int j = 0; j < 6; ++j) c.push_back(gen::scalar(rng, k));
    c.push_back(gen::unit(rng, k));
    const UPoly f(k, c);
    std::vector<Scalar> brute;
    for (std::uint64_t v = 0; v < 31; ++v) {
      const Scalar s = Scalar::element(v, k);
      if (f.evaluate(s).is_zero()) brute.push_back(s);
    }
    const RootSearch r = find_roots(f);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.roots, brute);
  }
}

TEST(UPoly, RationalRoots) {
  // (2t - 1)(t + 3)(t^2 + 1)
  const UPoly f = to_upoly(parse_poly("(2*y - 1)*(y + 3)*(y^2 + 1)", xy_vars(), Q), 1);
  const RootSearch r = find_roots(f);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_EQ(r.roots[0].to_string(), "-3");
  EXPECT_EQ(r.roots[1].to_string(), "1/2");
}

TEST(Gcd, CommonFactorIsRecovered) {
  std::mt19937_64 rng(9);
  for (const Field& k : {Q, F10007}) {
    for (int i = 0; i < 30; ++i) {
      const MPoly h = gen::poly_xy(rng, k, 2), f = gen::poly_xy(rng, k, 2), g = gen::poly_xy(rng, k, 2);
      if (h.is_zero() || h.is_constant() || f.is_zero() || g.is_zero()) continue;
      const MPoly d = gcd_bivariate(f * h, g * h);
      // h divides d, and d divides both inputs.
      EXPECT_NO_THROW(divide_exact(d, h)) << h.to_string() << " / " << d.to_string();
      EXPECT_NO_THROW(divide_exact(f * h, d));
      EXPECT_NO_THROW(divide_exact(g * h, d));
      EXPECT_TRUE(d.leading_coefficient().is_one());
    }
  }
}

TEST(Gcd, ZeroConventions) {
  EXPECT_EQ(gcd_bivariate(P("2*x + 4"), MPoly(Q, xy_vars())), P("x + 2"));
  EXPECT_TRUE(gcd_bivariate(MPoly(Q, xy_vars()), MPoly(Q, xy_vars())).is_zero());
  EXPECT_EQ(gcd_bivariate(P("x^2 - y^2"), P("x*y + y^2")), P("x + y"));
  EXPECT_TRUE(gcd_bivariate(P("x"), P("y")).is_constant());
}

TEST(Resultant, ProductOverRootsOracle) {
  // For monic f = prod (x - r_i(y)), Res_x(f, g) = prod g(r_i(y), y).
  std::mt19937_64 rng(10);
  const MPoly x = P("x");
  for (const Field& k : {Q, F10007}) {
    for (int i = 0; i < 20; ++i) {
      MPoly f = MPoly::constant(Scalar::one(k), xy_vars());
      MPoly expected = MPoly::constant(Scalar::one(k), xy_vars());
      const MPoly g = gen::poly_xy(rng, k, 3) + P("x^2", k);
      for (int j = 0; j < 3; ++j) {
        const MPoly r = gen::poly_y(rng, k, static_cast<unsigned>(gen::below(rng, 3)));
        f = f * (P("x", k) - r);
        expected = expected * substitute(g, {{"x", r}, {"y", P("y", k)}});
      }
      const UPoly res = resultant_x(f, g);
      EXPECT_EQ(to_mpoly(res, 1, xy_vars()), expected);
    }
  }
}

TEST(Squarefree, RemovesRepeatedFactors) {
  const MPoly f = P("x - y^2"), g = P("x + y + 1");
  EXPECT_EQ(squarefree_part(f.pow(2) * g), normalize_monic(f * g));
  EXPECT_EQ(squarefree_part(f.pow(3)), normalize_monic(f));
}

TEST(Squarefree, PositiveCharacteristicKeepsPthPowers) {
  // In F_3, (x + y)^3 = x^3 + y^3 has vanishing partial derivatives.
  const Field F3 = Field::prime(3);
  const MPoly f = P("x^3 + y^3", F3);
  EXPECT_EQ(squarefree_part(f), f);
  EXPECT_EQ(squarefree_part(P("(x + 2*y)^2", F3)), P("x + 2*y", F3));
}
