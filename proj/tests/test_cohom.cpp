#include "doctest.h"
#include "dgsw/cohom.hpp"

using namespace dgsw;

namespace {

CdgaPtr weighted_crit() {
  // k[x, xi | D xi = x^2] with weights 1, 2
  auto A = Cdga::make();
  int x = A->add_generator("x", 0, 1);
  int xi = A->add_generator("xi", -1, 2);
  A->set_diff(xi, A->var(x) * A->var(x));
  return A;
}

}  // namespace

TEST_CASE("slice dimensions of a polynomial line") {
  auto A = Cdga::make();
  A->add_generator("x", 0);
  SliceSpec spec{-1, 0, 3, std::nullopt};
  auto sc = build_slice(free_cover(A), spec, std::nullopt);
  CHECK(sc.dim(0) == 4);
  CHECK(sc.dim(-1) == 0);
  CHECK_FALSE(sc.exact);
}

TEST_CASE("two-point complexes over the ground field") {
  auto k = Cdga::make();
  auto M0 = DgModule::make(k, {{"e", -1, std::nullopt}, {"f", 0, std::nullopt}});
  SliceSpec spec{-2, 1, 2, std::nullopt};
  auto rep0 = cohomology(M0, spec);
  CHECK(rep0.dim(-1) == 1);
  CHECK(rep0.dim(0) == 1);

  auto M1 = DgModule::make(k, {{"e", -1, std::nullopt}, {"f", 0, std::nullopt}});
  M1->set_diff(1, 0, k->one());
  auto rep1 = cohomology(M1, spec);
  CHECK(rep1.dim(-1) == 0);
  CHECK(rep1.dim(0) == 0);
}

TEST_CASE("weight slices of the critical line are exact") {
  auto A = weighted_crit();
  SliceSpec spec{-2, 0, 8, 3};
  auto rep = cohomology(A, spec);
  CHECK(rep.exact);
  CHECK(rep.dim(0, 0) == 1);
  CHECK(rep.dim(0, 1) == 1);
  CHECK(rep.dim(0, 2) == 0);
  CHECK(rep.dim(0, 3) == 0);
  CHECK(rep.dim(-1) == 0);
  // representatives are closed and nonzero
  for (auto& e : rep.entries)
    for (auto& r : e.representatives) {
      CHECK_FALSE(r.is_zero());
      CHECK(r.d().is_zero());
    }
}

TEST_CASE("euler characteristic of exact slices") {
  auto A = weighted_crit();
  SliceSpec spec{-3, 0, 8, 4};
  for (int w = 0; w <= 4; ++w) {
    auto sc = build_slice(free_cover(A), spec, w);
    REQUIRE(sc.exact);
    int chain = 0, homology = 0;
    for (int n = spec.deg_min; n <= spec.deg_max; ++n) {
      int sgn = (n & 1) ? -1 : 1;
      chain += sgn * sc.dim(n);
    }
    auto rep = cohomology(A, SliceSpec{spec.deg_min, spec.deg_max,
                                       spec.max_polydeg, w});
    for (auto& e : rep.entries)
      if (e.weight == w)
        homology += ((e.degree & 1) ? -1 : 1) * e.dim;
    CHECK(chain == homology);
  }
}

TEST_CASE("solve_boundary") {
  auto A = weighted_crit();
  SliceSpec spec{-2, 1, 6, 4};

  Poly x2 = A->var("x") * A->var("x");
  auto r = solve_boundary(A, x2, spec);
  REQUIRE(r.closed);
  REQUIRE(r.primitive.has_value());
  CHECK(r.primitive->coef[0] == A->var("xi"));

  auto kx = Cdga::make();
  kx->add_generator("x", 0);
  auto r1 = solve_boundary(kx, kx->one(), SliceSpec{-2, 1, 4, std::nullopt});
  CHECK(r1.closed);
  CHECK_FALSE(r1.primitive.has_value());
  CHECK_FALSE(r1.class_coords.empty());

  auto r0 = solve_boundary(kx, kx->zero(), SliceSpec{-2, 1, 4, std::nullopt});
  CHECK(r0.closed);
  REQUIRE(r0.primitive.has_value());
  CHECK(r0.primitive->is_zero());
}

TEST_CASE("localization cohomology oracles") {
  auto B = Cdga::make();
  B->add_generator("x", 0);

  // f = 1: quasi-isomorphic to B, truncated H^0 has dimension N+1
  auto L1 = localize(*B, B->one());
  for (int N : {3, 5}) {
    auto rep = cohomology(L1, SliceSpec{-1, 0, N, std::nullopt});
    CHECK_FALSE(rep.exact);
    CHECK(rep.dim(0) == N + 1);
  }

  // f = x: truncated Laurent polynomials, H^0 dimension 2N+1
  auto Lx = localize(*B, B->var("x"));
  for (int N : {3, 5}) {
    auto rep = cohomology(Lx, SliceSpec{-1, 0, N, std::nullopt});
    CHECK(rep.dim(0) == 2 * N + 1);
  }
}

TEST_CASE("quis detection") {
  auto A = Cdga::make();
  A->add_generator("x", 0);
  auto F = free_cover(A);
  SliceSpec spec{-2, 1, 5, std::nullopt};
  CHECK(is_quis(DgMap::identity(F), spec));
  DgMap mulx(F, F, 0);
  mulx.set_entry(0, 0, A->var("x"));
  CHECK_FALSE(is_quis(mulx, spec));
}

TEST_CASE("lift a quis along a contractible extension") {
  auto B = Cdga::make();
  B->add_generator("x", 0);
  auto A = Cdga::make();
  A->add_generator("x", 0);
  int t = A->add_generator("t", 0);
  int xi = A->add_generator("xi", -1);
  A->set_diff(xi, A->var(t));
  auto f = CdgaMorphism::inclusion(B.get(), A.get());
  REQUIRE(f.validate().pass);

  auto M = free_cover(B);
  auto N = free_cover(B);
  auto MA = free_cover(A);
  auto NA = free_cover(A);
  SliceSpec spec{-2, 1, 4, std::nullopt};

  DgMap phi(MA, NA, 0);
  phi.set_entry(0, 0, A->constant(Rational(2)));
  auto psi = lift_quis(f, M, N, phi, spec);
  REQUIRE(psi.has_value());
  CHECK(psi->entry(0, 0) == B->constant(Rational(2)));

  // H^0 mismatch is rejected
  auto K = Cdga::make();
  auto fk = CdgaMorphism(K.get(), B.get(), {});
  auto MK = free_cover(K);
  DgMap phib(free_cover(B), free_cover(B), 0);
  phib.set_entry(0, 0, B->one());
  CHECK_THROWS_AS(lift_quis(fk, MK, MK, phib, spec),
                  std::invalid_argument);
}

TEST_CASE("lift matches a nontrivial map up to homotopy") {
  auto B = Cdga::make();
  B->add_generator("x", 0);
  auto A = Cdga::make();
  A->add_generator("x", 0);
  int t = A->add_generator("t", 0);
  int xi = A->add_generator("xi", -1);
  A->set_diff(xi, A->var(t));
  auto f = CdgaMorphism::inclusion(B.get(), A.get());

  // rank-2 complexes differing by an elementary row operation
  auto mk = [](const CdgaPtr& R, const Poly& entry) {
    auto m = DgModule::make(
        R, {{"a", -1, std::nullopt}, {"b", 0, std::nullopt}});
    m->set_diff(1, 0, entry);
    return m;
  };
  auto M = mk(B, B->var("x") * B->var("x"));
  auto N = mk(B, B->var("x") * B->var("x"));
  auto MA = mk(A, A->var("x") * A->var("x"));
  auto NA = mk(A, A->var("x") * A->var("x"));

  DgMap phi(MA, NA, 0);
  phi.set_entry(0, 0, A->one());
  phi.set_entry(1, 1, A->one());
  phi.set_entry(1, 0, A->var("x"));  // degree mismatch would be invalid
  // entry (1,0) has degree |a| - |b| = -1: must be degree -1; x is not.
  phi.set_entry(1, 0, A->zero());
  REQUIRE(phi.validate().pass);

  SliceSpec spec{-3, 1, 4, std::nullopt};
  auto psi = lift_quis(f, M, N, phi, spec);
  REQUIRE(psi.has_value());
  CHECK(psi->validate().pass);
  CHECK(is_quis(*psi, spec));
}
