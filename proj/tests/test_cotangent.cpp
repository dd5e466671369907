#include "doctest.h"
#include "dgsw/cotangent.hpp"

using namespace dgsw;

namespace {

CdgaPtr kx(std::optional<int> w = std::nullopt) {
  auto A = Cdga::make();
  A->add_generator("x", 0, w);
  return A;
}

// k[x, xi | D xi = x^2], optionally weighted (x:1, xi:2).
CdgaPtr crit_line(bool weighted) {
  auto A = Cdga::make();
  int x = A->add_generator("x", 0, weighted ? std::optional<int>(1)
                                            : std::nullopt);
  int xi = A->add_generator("xi", -1, weighted ? std::optional<int>(2)
                                               : std::nullopt);
  A->set_diff(xi, A->var(x) * A->var(x));
  return A;
}

}  // namespace

TEST_CASE("cotangent complex of a polynomial line") {
  auto A = kx();
  auto L = cotangent_complex(A);
  REQUIRE(L.mod->rank() == 1);
  CHECK(L.mod->basis(0).name == "dx");
  CHECK(L.mod->basis(0).degree == 0);
  CHECK(L.mod->diff(0, 0).is_zero());
  CHECK(L.mod->validate().pass);

  auto x = A->var("x");
  auto dx2 = L.d_of(x * x);
  CHECK(dx2.coef[0] == x * Rational(2));
  CHECK(L.d_of(A->constant(Rational(5))).is_zero());
}

TEST_CASE("cotangent complex of the critical line") {
  auto A = crit_line(false);
  auto L = cotangent_complex(A);
  REQUIRE(L.mod->rank() == 2);
  int idx = L.mod->find("dx"), idxi = L.mod->find("dxi");
  REQUIRE(idx == 0);
  REQUIRE(idxi == 1);
  CHECK(L.mod->basis(idxi).degree == -1);
  // D(dxi) = -d(x^2) = -2x dx
  CHECK(L.mod->diff(idx, idxi) == A->var("x") * Rational(-2));
  CHECK(L.mod->diff(idxi, idx).is_zero());
  CHECK(L.mod->validate().pass);

  // d is a derivation: d(x xi) has coefficients (-xi, x) in (dx, dxi)
  auto v = L.d_of(A->var("x") * A->var("xi"));
  CHECK(v.coef[idx] == -A->var("xi"));
  CHECK(v.coef[idxi] == A->var("x"));
}

TEST_CASE("universal derivation anticommutes with the differential") {
  auto A = Cdga::make();
  int x1 = A->add_generator("x1", 0);
  int x2 = A->add_generator("x2", 0);
  int xi1 = A->add_generator("xi1", -1);
  int xi2 = A->add_generator("xi2", -1);
  int eta = A->add_generator("eta", -2);
  A->set_diff(xi1, A->var(x1) * A->var(x1));
  A->set_diff(xi2, A->var(x2) * A->var(x2));
  A->set_diff(eta, A->var(x2) * A->var(x2) * A->var(xi1) -
                       A->var(x1) * A->var(x1) * A->var(xi2));
  REQUIRE(check_presentation(*A).pass);

  auto L = cotangent_complex(A);
  CHECK(L.mod->validate().pass);

  std::vector<Poly> samples = {
      A->var(x1),
      A->var(eta),
      A->var(x1) * A->var(x2) * A->var(xi2),
      A->var(xi1) * A->var(xi2) + A->var(x1) * A->var(eta),
      A->var(x2) * A->var(x2) * A->var(x1) * A->var(xi1) - A->var(x2),
      A->var(x1) * A->var(xi1) * A->var(xi2) * A->var(eta),
  };
  for (auto& a : samples) {
    auto lhs = L.d_of(A->d(a));
    auto rhs = L.d_of(a).d();
    CHECK((lhs + rhs).is_zero());
  }
}

TEST_CASE("relative cotangent triangle of the critical line over its base") {
  auto B = kx();
  auto A = crit_line(false);
  auto tri = relative_cotangent_triangle(B, A);
  REQUIRE(tri.restricted->rank() == 1);
  REQUIRE(tri.relative->rank() == 1);
  CHECK(tri.relative->basis(0).name == "dxi");
  // the induced differential on the quotient vanishes
  CHECK(tri.relative->diff(0, 0).is_zero());
  CHECK(tri.incl.validate().pass);
  CHECK(tri.proj.validate().pass);
  CHECK(tri.cone_to_relative.validate().pass);
  SliceSpec spec{-3, 1, 6, std::nullopt};
  CHECK(is_quis(tri.cone_to_relative, spec));
}

TEST_CASE("relative cotangent degenerate endpoints") {
  auto A = crit_line(false);

  SUBCASE("B = A gives a zero relative complex") {
    auto tri = relative_cotangent_triangle(A, A);
    CHECK(tri.relative->rank() == 0);
    // window wide enough to contain the double cone entirely
    SliceSpec spec{-5, 1, 6, std::nullopt};
    CHECK(is_quis(tri.cone_to_relative, spec));
  }

  SUBCASE("B = k gives the absolute complex") {
    auto k = Cdga::make();
    auto tri = relative_cotangent_triangle(k, A);
    auto L = cotangent_complex(A);
    REQUIRE(tri.relative->rank() == L.mod->rank());
    for (int i = 0; i < L.mod->rank(); ++i)
      for (int j = 0; j < L.mod->rank(); ++j)
        CHECK(tri.relative->diff(i, j) == L.mod->diff(i, j));
  }

  SUBCASE("non-prefix inclusion is rejected") {
    auto B = Cdga::make();
    B->add_generator("y", 0);
    CHECK_THROWS_AS(relative_cotangent_triangle(B, A), std::invalid_argument);
  }
}

TEST_CASE("Euler characteristic is additive over the triangle per slice") {
  auto B = kx(1);
  auto A = crit_line(true);
  auto tri = relative_cotangent_triangle(B, A);
  SliceSpec spec{-3, 0, 8, 4};
  auto hr = cohomology(tri.restricted, spec);
  auto hf = cohomology(tri.full, spec);
  auto hq = cohomology(tri.relative, spec);
  REQUIRE(hr.exact);
  REQUIRE(hf.exact);
  REQUIRE(hq.exact);
  for (int w = 0; w <= 4; ++w) {
    int cr = 0, cf = 0, cq = 0;
    for (int n = spec.deg_min; n <= spec.deg_max; ++n) {
      int sgn = (n & 1) ? -1 : 1;
      cr += sgn * hr.dim(n, w);
      cf += sgn * hf.dim(n, w);
      cq += sgn * hq.dim(n, w);
    }
    CHECK(cf == cr + cq);
  }
}

TEST_CASE("connectivity report on the critical line, d = 1") {
  auto B = kx(1);
  auto A = crit_line(true);
  SliceSpec spec{-3, 1, 8, 4};
  auto rep = check_connectivity(B, A, 1, spec);
  CHECK(rep.exact_slices);
  CHECK(rep.cond_i);
  CHECK(rep.cond_ii);
  CHECK(rep.agree);
  CHECK(rep.moreover_degree == -1);
  CHECK(rep.moreover_holds);
}

TEST_CASE("connectivity report for the identity inclusion") {
  auto A = crit_line(true);
  SliceSpec spec{-4, 1, 8, 4};
  for (int d = 1; d <= 3; ++d) {
    auto rep = check_connectivity(A, A, d, spec);
    CHECK(rep.cond_i);
    CHECK(rep.cond_ii);
    CHECK(rep.agree);
    CHECK(rep.moreover_holds);
  }
}

TEST_CASE("connectivity failure agrees on both sides") {
  auto B = Cdga::make();
  auto A = kx(1);
  SliceSpec spec{-3, 1, 6, 3};
  auto rep = check_connectivity(B, A, 1, spec);
  CHECK_FALSE(rep.cond_i);  // H^0(L_{A/B}) = A dx != 0 and H^0 not epi
  CHECK_FALSE(rep.cond_ii);
  CHECK(rep.agree);
}

TEST_CASE("cotangent amplitude stays in the expected window") {
  auto A = crit_line(false);
  auto L = cotangent_complex(A);
  auto amp = tor_amplitude(*L.mod);
  REQUIRE(amp.has_value());
  CHECK(amp->first >= -1);
  CHECK(amp->second <= 0);
}

TEST_CASE("finite presentation criterion") {
  CHECK(is_finitely_presented_criterion(kx()).pass);
  CHECK(is_finitely_presented_criterion(crit_line(false)).pass);
}
