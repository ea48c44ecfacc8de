#include <doctest.h>

#include "test_util.hpp"
#include "twa/scheme.hpp"

using namespace twa;
using namespace twa_test;

TEST_CASE("one-point scheme parses") {
  Scheme s = parse_scheme("1 0\n0\n");
  CHECK(s.n == 1);
  CHECK(s.d == 0);
  CHECK(validate(s).ok());
}

TEST_CASE("canonical format: comments and blank lines are ignored") {
  Scheme s = parse_scheme("# a comment\n\n2 1\n# another\n0 1\n\n1 0\n");
  CHECK(s == make_thin_cyclic(2));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_scheme(""), ParseError);
  CHECK_THROWS_AS(parse_scheme("# only comments\n"), ParseError);
  CHECK_THROWS_AS(parse_scheme("2\n0 1\n1 0\n"), ParseError);       // header not 'n d'
  CHECK_THROWS_AS(parse_scheme("2 1\n0 1\n1 x\n"), ParseError);     // non-integer token
  CHECK_THROWS_AS(parse_scheme("2 1\n0 1\n1 2\n"), ParseError);     // entry out of range
  CHECK_THROWS_AS(parse_scheme("2 1\n0 1\n"), ParseError);          // missing row
  CHECK_THROWS_AS(parse_scheme("2 1\n0 1 1\n1 0\n"), ParseError);   // ragged row
  CHECK_THROWS_AS(parse_scheme("2 5\n0 1\n1 0\n"), ParseError);     // d+1 > n^2
  CHECK_THROWS_AS(parse_scheme("-1 0\n"), ParseError);
}

TEST_CASE("headerless import infers n and d") {
  Scheme s = parse_scheme_matrix("0 1\n1 0\n");
  CHECK(s == make_thin_cyclic(2));
  CHECK_THROWS_AS(parse_scheme_matrix("0 1 2\n1 0 1\n"), ParseError);  // not square
}

TEST_CASE("serialize round-trips") {
  for (const char* name : {"thin-z1.scheme", "thin-z4.scheme", "c6-fusion.scheme", "c2-wr-c2.scheme"}) {
    Scheme s = load_scheme(name);
    CHECK(parse_scheme(serialize(s)) == s);
  }
}

TEST_CASE("corpus files match the independent model constructions") {
  CHECK(load_scheme("c6-fusion.scheme") == make_c6_fusion());
  CHECK(load_scheme("c2-wr-c2.scheme") == make_wreath_c2_c2());
  CHECK(load_scheme("k4.scheme") == make_k4());
  for (int n = 1; n <= 6; ++n)
    CHECK(load_scheme("thin-z" + std::to_string(n) + ".scheme") == make_thin_cyclic(n));
}

TEST_CASE("validate accepts the corpus") {
  for (const char* name : {"thin-z1.scheme", "thin-z2.scheme", "thin-z3.scheme", "thin-z4.scheme",
                           "thin-z5.scheme", "thin-z6.scheme", "c6-fusion.scheme", "c2-wr-c2.scheme",
                           "k4.scheme"}) {
    CAPTURE(name);
    CHECK(validate(load_scheme(name)).ok());
  }
  CHECK(validate(make_k4()).ok());
}

TEST_CASE("validate reports a broken diagonal") {
  Scheme s = make_c6_fusion();
  s.rel[0 * 6 + 3] = 0;  // overwrite one off-diagonal entry with 0
  auto report = validate(s);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations)
    if (v.message.find("R_0 not diagonal") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validate reports broken transpose closure") {
  // R_1 = {(0,1),(0,2),(1,2),(2,0)}: the transpose of R_1 meets both R_1 and R_2.
  Scheme bad;
  bad.n = 3;
  bad.d = 2;
  bad.rel = {0, 1, 1,
             2, 0, 1,
             1, 2, 0};
  auto report = validate(bad);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations)
    if (v.axiom == "transpose") found = true;
  CHECK(found);
}

TEST_CASE("validate reports regularity failure with witness") {
  auto report = validate(make_irregular());
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations)
    if (v.axiom == "regularity") found = true;
  CHECK(found);
}

TEST_CASE("intersection tensor of the C6 fusion: frozen counts") {
  // Expected values computed with brute_intersection_number on the
  // difference-class model below, then frozen here.
  Scheme s = make_c6_fusion();
  IntersectionTensor t = intersection_tensor(s);
  CHECK(t.d == 3);
  CHECK(t.k == std::vector<long long>{1, 1, 2, 2});
  for (int a = 0; a <= 3; ++a) CHECK(t.star(a) == a);  // symmetric scheme

  CHECK(t.at(2, 2, 3) == 1);
  CHECK(t.at(2, 2, 0) == 2);
  CHECK(t.at(2, 0, 2) == 1);
  CHECK(t.at(2, 2, 1) == 0);
  CHECK(t.at(2, 3, 1) == 2);
  CHECK(t.at(3, 3, 0) == 2);

  // Exhaustive agreement with the counting oracle.
  for (int u = 0; u <= 3; ++u)
    for (int v = 0; v <= 3; ++v)
      for (int w = 0; w <= 3; ++w) {
        auto oracle = brute_intersection_number(s, u, v, w);
        REQUIRE(oracle.has_value());
        CHECK(t.at(u, v, w) == *oracle);
      }

  CHECK(complex_product(t, 2, 2) == std::vector<int>{0, 3});
  CHECK(complex_product(t, 2, 3) == std::vector<int>{1, 2});
  CHECK(complex_product(t, 3, 3) == std::vector<int>{0, 3});
  CHECK(count_nonzero_intersections(t) == 20);
}

TEST_CASE("intersection tensor of thin Z_3") {
  IntersectionTensor t = intersection_tensor(make_thin_cyclic(3));
  CHECK(t.k == std::vector<long long>{1, 1, 1});
  CHECK(t.at(1, 2, 0) == 1);
  CHECK(t.star(1) == 2);
  CHECK(count_nonzero_intersections(t) == 9);
}

TEST_CASE("intersection tensor of the wreath product") {
  Scheme s = make_wreath_c2_c2();
  IntersectionTensor t = intersection_tensor(s);
  CHECK(t.k == std::vector<long long>{1, 1, 2});
  CHECK(t.at(2, 2, 0) == 2);
  CHECK(t.at(2, 2, 1) == 2);
  CHECK(t.at(2, 2, 2) == 0);
  CHECK(complex_product(t, 2, 2) == std::vector<int>{0, 1});
  for (int u = 0; u <= 2; ++u)
    for (int v = 0; v <= 2; ++v)
      for (int w = 0; w <= 2; ++w) CHECK(t.at(u, v, w) == *brute_intersection_number(s, u, v, w));
}

TEST_CASE("intersection_tensor rejects invalid schemes") {
  CHECK_THROWS_AS(intersection_tensor(make_irregular()), std::invalid_argument);
}

TEST_CASE("classify") {
  auto t_thin = intersection_tensor(make_thin_cyclic(4));
  auto c = classify(t_thin, 0);
  CHECK(c.thin);
  CHECK(c.quasi_thin);
  CHECK(c.p_prime_valenced);

  auto t_c6 = intersection_tensor(make_c6_fusion());
  c = classify(t_c6, 2);
  CHECK_FALSE(c.thin);
  CHECK(c.quasi_thin);
  CHECK_FALSE(c.p_prime_valenced);  // k = 2 divisible by 2
  c = classify(t_c6, 3);
  CHECK(c.p_prime_valenced);

  auto t_k4 = intersection_tensor(make_k4());
  c = classify(t_k4, 3);
  CHECK_FALSE(c.quasi_thin);
  CHECK_FALSE(c.p_prime_valenced);  // valency 3

  CHECK_THROWS_AS(classify(t_k4, 4), std::invalid_argument);
  CHECK_THROWS_AS(classify(t_k4, 1), std::invalid_argument);
}
