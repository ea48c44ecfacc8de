#include <doctest.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "test_util.hpp"
#include "twa/field.hpp"
#include "twa/terwilliger.hpp"

using namespace twa;
using namespace twa_test;

namespace {

using BlockSizes = std::vector<std::pair<std::string, int>>;

}  // namespace

TEST_CASE("thin schemes decompose into one full matrix block") {
  for (int n : {3, 5}) {
    const auto s = make_thin_cyclic(n);
    const BlockSizes expected{{"M_X", n}};

    auto check = [&](auto field) {
      const auto ctx = build_context(field, s, 0);
      const auto dec = decompose(ctx);
      CHECK(dec.branch == DecompBranch::thin);
      CHECK(dec.certified());
      CHECK(dec.semisimple());
      CHECK(dec.certificate.radical.dim() == 0);
      CHECK(dec.certificate.quotient_dim == static_cast<std::size_t>(n) * n);
      CHECK(dec.certificate.block_sizes == expected);
    };
    check(Rationals{});
    check(GFp(2));
    check(GFp(3));
    check(GFp(5));  // p dividing |X| changes nothing for thin schemes
  }
}

TEST_CASE("the order-6 fusion scheme is semisimple away from characteristic two") {
  const auto s = make_c6_fusion();
  const BlockSizes expected{{"dual", 4}, {"class-2", 2}};

  auto check = [&](auto field) {
    const auto ctx = build_context(field, s, 0);
    const auto T = generate_T(ctx);
    const auto dec = decompose(ctx, T);
    CHECK(dec.branch == DecompBranch::odd_or_zero_char);
    CHECK(dec.certified());
    CHECK(dec.semisimple());
    CHECK(dec.certificate.radical.dim() == 0);
    CHECK(dec.certificate.quotient_dim == 20);
    CHECK(dec.certificate.block_sizes == expected);
    CHECK(dec.a1 == std::vector<int>{0, 1});
    CHECK(dec.a2 == std::vector<int>{2, 3});

    // With zero radical the block sizes account for the whole dimension.
    std::size_t total = 0;
    for (const auto& [label, sz] : dec.certificate.block_sizes)
      total += static_cast<std::size_t>(sz) * sz;
    CHECK(total == dec.t_dim);
  };
  check(Rationals{});
  check(GFp(3));
  check(GFp(5));
}

TEST_CASE("characteristic two radical equals the dual ideal") {
  const GFp f2(2);

  {
    const auto ctx = build_context(f2, make_c6_fusion(), 0);
    const auto T = generate_T(ctx);
    const auto dec = decompose(ctx, T);
    CHECK(dec.branch == DecompBranch::char_two);
    CHECK(dec.certified());
    CHECK_FALSE(dec.semisimple());
    const auto j1 = j1_basis(ctx);
    CHECK(dec.certificate.radical.dim() == 12);
    CHECK(dec.certificate.radical == j1.space);
    CHECK(dec.certificate.nilpotency == 3);
    CHECK(dec.certificate.quotient_dim == 8);
    CHECK(dec.certificate.block_sizes == BlockSizes{{"dual", 2}, {"class-2", 2}});
  }
  {
    const auto ctx = build_context(f2, make_wreath_c2_c2(), 0);
    const auto dec = decompose(ctx);
    CHECK(dec.certified());
    CHECK_FALSE(dec.semisimple());
    CHECK(dec.certificate.radical.dim() == 5);
    CHECK(dec.certificate.radical == j1_basis(ctx).space);
    CHECK(dec.certificate.nilpotency == 3);
    CHECK(dec.certificate.quotient_dim == 5);
    CHECK(dec.certificate.block_sizes == BlockSizes{{"dual", 2}, {"class-2", 1}});
  }
}

TEST_CASE("semisimplicity holds exactly away from characteristic two or for thin schemes") {
  struct Row {
    Scheme s;
    bool thin;
  };
  const std::vector<Row> rows{{make_c6_fusion(), false},
                              {make_wreath_c2_c2(), false},
                              {make_thin_cyclic(4), true}};
  for (const auto& row : rows) {
    auto verdict = [&](auto field) {
      const auto dec = decompose(build_context(field, row.s, 0));
      REQUIRE(dec.certified());
      return dec.semisimple();
    };
    CHECK(verdict(Rationals{}));
    CHECK(verdict(GFp(3)));
    CHECK(verdict(GFp(2)) == row.thin);
  }
  CHECK_THROWS_AS((void)decompose(build_context(Rationals{}, make_k4(), 0)),
                  std::invalid_argument);
}

TEST_CASE("trace-form radical agrees with the certified radical in characteristic zero") {
  const Rationals q;
  for (const auto& s : {make_c6_fusion(), make_wreath_c2_c2(), make_thin_cyclic(4)}) {
    const auto ctx = build_context(q, s, 0);
    const auto T = generate_T(ctx);
    const auto dec = decompose(ctx, T);
    const auto rad = radical_char0(T);
    CHECK(rad.dim() == 0);
    CHECK(rad == dec.certificate.radical);
  }
}

TEST_CASE("corner algebras detect the characteristic-two radical") {
  const auto s = make_c6_fusion();

  {
    const Rationals q;
    const auto ctx = build_context(q, s, 0);
    const auto T = generate_T(ctx);
    const auto corner = corner_algebra(ctx, T, 2);
    CHECK(corner.dim() == 2);
    CHECK(corner.contains(ctx.E[2]));
    CHECK(corner.contains(dual_j_block(ctx, 2, 2)));
    CHECK(radical_char0(corner).dim() == 0);

    const auto point = corner_algebra(ctx, T, 0);
    CHECK(point.dim() == 1);
  }
  {
    const GFp f2(2);
    const auto ctx = build_context(f2, s, 0);
    const auto corner = corner_algebra(ctx, 2);
    CHECK(corner.dim() == 2);
    const auto w22 = dual_j_block(ctx, 2, 2);
    CHECK(corner.contains(w22));
    CHECK_FALSE(w22.is_zero());
    CHECK((w22 * w22).is_zero());  // valency 2 vanishes mod 2
    CHECK(nilpotency_index(f2, 6, {w22}) == 2);

    std::vector<MatrixUnitBlock<GFp>> blocks{{"corner", 1, {ctx.E[2]}}};
    const auto cert = certify_radical_sandwich(corner, {w22}, blocks);
    CHECK(cert.certified);
    CHECK(cert.radical.dim() == 1);
    CHECK(cert.quotient_dim == 1);
  }
}

TEST_CASE("dishonest decomposition claims are rejected") {
  const auto s = make_c6_fusion();

  {
    // Class units without the dual correction: cross-block products survive.
    const GFp f3(3);
    const auto ctx = build_context(f3, s, 0);
    const auto T = generate_T(ctx);
    std::vector<MatrixUnitBlock<GFp>> blocks;
    MatrixUnitBlock<GFp> dual{"dual", 4, {}};
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        dual.units.push_back(
            dual_j_block(ctx, a, b).scaled(f3.inv(f3.from_int(ctx.tensor.valency(b)))));
    blocks.push_back(std::move(dual));
    MatrixUnitBlock<GFp> cls{"class-2", 2, {}};
    for (int g : {2, 3})
      for (int h : {2, 3}) cls.units.push_back(b_element(ctx, g, h));
    blocks.push_back(std::move(cls));
    const auto cert = certify_radical_sandwich(T, {}, blocks);
    CHECK_FALSE(cert.certified);
    CHECK_FALSE(cert.failure.empty());
  }
  {
    // Away from characteristic two the dual J-block span is not even an
    // ideal: A_2 * W_20 = 2 W_00 + W_30 leaks into a valency-1 block.
    const GFp f3(3);
    const auto ctx = build_context(f3, s, 0);
    const auto T = generate_T(ctx);
    const auto cert = certify_radical_sandwich(T, j1_basis(ctx).gens, {});
    CHECK_FALSE(cert.certified);
    CHECK(cert.failure == "candidate is not a two-sided ideal");
  }
  {
    // The whole algebra is an ideal of itself but never nilpotent.
    const GFp f3(3);
    const auto ctx = build_context(f3, s, 0);
    const auto T = generate_T(ctx);
    const auto cert = certify_radical_sandwich(T, T.basis, {});
    CHECK_FALSE(cert.certified);
    CHECK(cert.failure == "candidate is not nilpotent");
  }
  {
    // A single adjacency matrix is no ideal.
    const GFp f2(2);
    const auto ctx = build_context(f2, s, 0);
    const auto T = generate_T(ctx);
    const auto cert = certify_radical_sandwich(T, {ctx.A[2]}, {});
    CHECK_FALSE(cert.certified);
    CHECK(cert.failure == "candidate is not a two-sided ideal");
  }
  {
    // Blocks that do not account for the full dimension.
    const Rationals q;
    const auto ctx = build_context(q, s, 0);
    const auto T = generate_T(ctx);
    std::vector<MatrixUnitBlock<Rationals>> blocks;
    MatrixUnitBlock<Rationals> dual{"dual", 4, {}};
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        dual.units.push_back(
            dual_j_block(ctx, a, b).scaled(q.inv(q.from_int(ctx.tensor.valency(b)))));
    blocks.push_back(std::move(dual));
    const auto cert = certify_radical_sandwich(T, {}, blocks);
    CHECK_FALSE(cert.certified);
    CHECK_FALSE(cert.failure.empty());
  }
}
