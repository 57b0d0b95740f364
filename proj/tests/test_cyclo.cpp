#include <doctest.h>

#include "twistcb/cyclo.hpp"

#include <cstdlib>

using namespace twistcb;

TEST_CASE("zeta basics") {
  CHECK(Cyc::zeta(2) == Cyc(-1));
  CHECK(Cyc::zeta(3).pow(3) == Cyc(1));
  CHECK(Cyc::zeta(3) != Cyc(1));
  CHECK(Cyc::zeta(3).pow(2) != Cyc(1));
  // Phi_3 relation
  Cyc z3 = Cyc::zeta(3);
  CHECK(z3 * z3 + z3 + Cyc(1) == Cyc(0));
  // zeta(5) * zeta(5)^4 = 1
  Cyc z5 = Cyc::zeta(5);
  CHECK(z5 * z5.pow(4) == Cyc(1));
  CHECK_THROWS(Cyc::zeta(4));
  CHECK_THROWS(Cyc::zeta(1));
}

TEST_CASE("arithmetic examples") {
  Cyc z3 = Cyc::zeta(3);
  CHECK(z3 * z3.pow(2) == Cyc(1));
  CHECK((Cyc(1) + z3) + z3.pow(2) == Cyc(0));
  Cyc z5 = Cyc::zeta(5);
  CHECK(z5 / z5 == Cyc(1));
  CHECK_THROWS(z5 / Cyc(0));
}

TEST_CASE("root sums vanish for p <= 7") {
  for (int p : {2, 3, 5, 7}) {
    Cyc s(0);
    for (int k = 0; k < p; ++k) s += Cyc::zeta_pow(p, k);
    CHECK(s == Cyc(0));
  }
}

static Cyc random_cyc(int p, unsigned& state) {
  auto rnd = [&state]() {
    state = state * 1103515245u + 12345u;
    return (int)((state >> 16) % 11) - 5;
  };
  std::vector<Rat> c(p - 1);
  for (auto& x : c) {
    x = Rat(rnd(), 1 + std::abs(rnd()) % 4);
    x.canonicalize();
  }
  return Cyc(p, std::move(c));
}

TEST_CASE("field axioms on random samples") {
  unsigned st = 42;
  for (int p : {3, 5, 7}) {
    for (int it = 0; it < 20; ++it) {
      Cyc a = random_cyc(p, st), b = random_cyc(p, st), c = random_cyc(p, st);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      if (!a.is_zero()) CHECK(a * a.inv() == Cyc(1));
    }
  }
}

TEST_CASE("rational promotion and demotion") {
  Cyc z3 = Cyc::zeta(3);
  Cyc x = z3 + Cyc(2);
  CHECK(x - z3 == Cyc(2));
  CHECK((z3 - z3).is_rational());
  CHECK(z3.pow(3).is_rational());
  CHECK(z3.pow(3).rat() == 1);
}
