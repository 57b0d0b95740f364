#include <doctest.h>

#include "twistcb/cyclo.hpp"
#include "twistcb/linalg.hpp"

using namespace twistcb;

TEST_CASE("span builder over Q") {
  SpanBuilder<Rat> sp;
  CHECK(sp.add({{0, Rat(1)}, {1, Rat(2)}}));
  CHECK(sp.add({{1, Rat(1)}}));
  CHECK_FALSE(sp.add({{0, Rat(3)}, {1, Rat(5)}}));
  CHECK(sp.rank() == 2);
  CHECK(sp.reduce({{0, Rat(7)}}).empty());
  CHECK_FALSE(sp.reduce({{2, Rat(1)}}).empty());
}

TEST_CASE("rank and kernel over Q") {
  Mat<Rat> m = {{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(0), Rat(1), Rat(1)}};
  CHECK(mat_rank(m) == 2);
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  // check A k = 0
  for (auto& row : m) {
    Rat s = 0;
    for (int j = 0; j < 3; ++j) s += row[j] * ker[0][j];
    CHECK(s == 0);
  }
}

TEST_CASE("solve and inverse") {
  Mat<Rat> a = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
  auto x = solve(a, {Rat(5), Rat(10)});
  CHECK(x[0] == Rat(1));
  CHECK(x[1] == Rat(3));
  auto ai = mat_inverse(a);
  CHECK(mat_mul(a, ai) == mat_id<Rat>(2));
  Mat<Rat> sing = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK_THROWS(mat_inverse(sing));
}

TEST_CASE("linear algebra over a cyclotomic field") {
  Cyc z = Cyc::zeta(3);
  Mat<Cyc> m = {{z, Cyc(1)}, {Cyc(1), z * z}};
  // rows proportional: z * (1, z^2) = (z, z^3) = (z, 1)
  CHECK(mat_rank(m) == 1);
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(z * ker[0][0] + Cyc(1) * ker[0][1] == Cyc(0));

  Mat<Cyc> inv_test = {{z, Cyc(1)}, {Cyc(0), Cyc(2)}};
  CHECK(mat_mul(inv_test, mat_inverse(inv_test)) == mat_id<Cyc>(2));
}
