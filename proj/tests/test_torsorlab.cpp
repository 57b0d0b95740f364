#include <doctest.h>

#include <stdexcept>

#include "twistcb/torsorlab.hpp"

using namespace twistcb;

namespace {

// base {0,1}: point 0 branched (fixed fiber point), point 1 etale
FiniteCover mixed_cover() {
  FiniteCover c;
  c.nbase = 2;
  c.pi = {0, 1, 1};
  c.gam = {0, 2, 1};
  return c;
}

FiniteCover etale_cover() {
  FiniteCover c;
  c.nbase = 1;
  c.pi = {0, 0};
  c.gam = {1, 0};
  return c;
}

} // namespace

TEST_CASE("group tables") {
  auto s3 = FiniteGroup::sym(3);
  CHECK(s3.n == 6);
  for (int a = 0; a < s3.n; ++a) {
    CHECK(s3.op(a, 0) == a);
    CHECK(s3.op(0, a) == a);
    CHECK(s3.op(a, s3.inv[a]) == 0);
  }
  auto z3 = FiniteGroup::cyclic(3);
  CHECK(is_automorphism(z3, inversion(z3)));
  auto s4 = FiniteGroup::sym(4);
  CHECK(!is_automorphism(s4, inversion(s4)));
  int t = FiniteGroup::perm_index(s4, {1, 0, 2, 3});
  CHECK(s4.op(t, t) == 0);
  CHECK(is_automorphism(s4, conj_by(s4, t)));
}

TEST_CASE("cover validation and branch detection") {
  auto c = mixed_cover();
  c.validate();
  CHECK(c.order() == 2);
  CHECK(c.is_branch(0));
  CHECK(!c.is_branch(1));
  auto e = etale_cover();
  e.validate();
  CHECK(!e.is_branch(0));
  FiniteCover bad = c;
  bad.gam = {1, 0, 2}; // moves between fibers
  CHECK_THROWS(bad.validate());
}

TEST_CASE("bundle validation") {
  auto cov = mixed_cover();
  auto s4 = FiniteGroup::sym(4);
  int s = FiniteGroup::perm_index(s4, {1, 0, 3, 2}); // (12)(34)
  auto rho = conj_by(s4, s);
  GammaGBundle triv{&cov, &s4, rho, {0, 0, 0}};
  triv.validate();
  // twist by (12): order-2 at the branch point since (12)(34) fixes (12)
  int t12 = FiniteGroup::perm_index(s4, {1, 0, 2, 3});
  GammaGBundle tw{&cov, &s4, rho, {t12, t12, t12}};
  tw.validate();
  // a 3-cycle fails the order constraint at the branch point
  int c3 = FiniteGroup::perm_index(s4, {1, 2, 0, 3});
  GammaGBundle bad{&cov, &s4, rho, {c3, 0, 0}};
  CHECK(!bad.valid());
}

TEST_CASE("local-type obstruction in S4") {
  auto cov = mixed_cover();
  auto s4 = FiniteGroup::sym(4);
  auto rho = conj_by(s4, FiniteGroup::perm_index(s4, {1, 0, 3, 2}));
  int t12 = FiniteGroup::perm_index(s4, {1, 0, 2, 3});
  GammaGBundle triv{&cov, &s4, rho, {0, 0, 0}};
  GammaGBundle tw{&cov, &s4, rho, {t12, t12, t12}};
  CHECK(local_type_equal(triv, triv, 0));
  CHECK(local_type_equal(triv, tw, 1));  // free orbit: always equivalent
  CHECK(!local_type_equal(triv, tw, 0)); // branch point: obstructed
  auto pf = invariant_pushforward(triv, tw);
  CHECK(!pf.torsor);
  CHECK(pf.iso[0].empty());
  CHECK(!pf.iso[1].empty());
  // the reference bundle pushes to its own automorphisms
  auto self = invariant_pushforward(triv, triv);
  CHECK(self.torsor);
  CHECK(self.iso == self.H);
  CHECK_THROWS_AS(equivalence_roundtrip(triv, tw), std::invalid_argument);
}

TEST_CASE("pushforward verdict matches pointwise local type") {
  auto cov = mixed_cover();
  auto z3 = FiniteGroup::cyclic(3);
  auto s3 = FiniteGroup::sym(3);
  int tr = FiniteGroup::perm_index(s3, {1, 0, 2});
  struct Fam {
    const FiniteGroup* G;
    GroupAuto rho;
  };
  std::vector<Fam> fams{{&z3, inversion(z3)}, {&s3, conj_by(s3, tr)}};
  for (auto& f : fams) {
    auto bundles = enumerate_bundles(cov, *f.G, f.rho);
    CHECK(bundles.size() > 1);
    for (auto& a : bundles)
      for (auto& b : bundles) {
        bool all = true;
        for (int y = 0; y < cov.nbase; ++y) all &= local_type_equal(a, b, y);
        CHECK(invariant_pushforward(a, b).torsor == all);
      }
  }
}

TEST_CASE("local type is an equivalence relation") {
  auto cov = mixed_cover();
  auto s3 = FiniteGroup::sym(3);
  auto rho = conj_by(s3, FiniteGroup::perm_index(s3, {1, 0, 2}));
  auto bundles = enumerate_bundles(cov, s3, rho);
  for (int y = 0; y < cov.nbase; ++y) {
    for (auto& a : bundles) CHECK(local_type_equal(a, a, y));
    for (auto& a : bundles)
      for (auto& b : bundles) {
        bool ab = local_type_equal(a, b, y);
        CHECK(ab == local_type_equal(b, a, y));
        if (!ab) continue;
        for (auto& c : bundles)
          if (local_type_equal(b, c, y)) CHECK(local_type_equal(a, c, y));
      }
  }
}

TEST_CASE("equivalence roundtrip on enumerated families") {
  auto cov = mixed_cover();
  auto z3 = FiniteGroup::cyclic(3);
  auto s3 = FiniteGroup::sym(3);
  int tr = FiniteGroup::perm_index(s3, {1, 0, 2});
  struct Fam {
    const FiniteGroup* G;
    GroupAuto rho;
  };
  std::vector<Fam> fams{{&z3, inversion(z3)}, {&s3, conj_by(s3, tr)}};
  for (auto& f : fams) {
    auto bundles = enumerate_bundles(cov, *f.G, f.rho);
    const GammaGBundle& ref = bundles.front(); // trivial twist comes first
    int same = 0;
    for (auto& b : bundles) {
      bool all = true;
      for (int y = 0; y < cov.nbase; ++y) all &= local_type_equal(ref, b, y);
      if (!all) continue;
      ++same;
      CHECK(equivalence_roundtrip(ref, b));
    }
    CHECK(same > 1);
  }
}

TEST_CASE("etale covers carry no obstruction") {
  auto cov = etale_cover();
  auto s4 = FiniteGroup::sym(4);
  auto rho = conj_by(s4, FiniteGroup::perm_index(s4, {1, 0, 3, 2}));
  int t12 = FiniteGroup::perm_index(s4, {1, 0, 2, 3});
  int c3 = FiniteGroup::perm_index(s4, {1, 2, 0, 3});
  GammaGBundle ref{&cov, &s4, rho, {0, 0}};
  ref.validate();
  for (int c : {0, t12, c3}) {
    GammaGBundle b{&cov, &s4, rho, {c, s4.inv[rho[c]]}};
    b.validate();
    CHECK(local_type_equal(ref, b, 0));
    CHECK(invariant_pushforward(ref, b).torsor);
    CHECK(equivalence_roundtrip(ref, b));
  }
}
