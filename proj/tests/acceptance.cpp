// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Every comparison is exact rational equality; the
// truncation windows are chosen wide enough that no checked class sits at
// a window edge.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dgsw/darboux.hpp"

using namespace dgsw;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  bool ok = true;
  int checks = 0;
  std::vector<std::string> details;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void check(bool cond, const std::string& what) {
    ++checks;
    if (!cond) {
      ok = false;
      if (details.size() < 8) details.push_back(what);
    }
  }
  void finish(int number) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("%s %d %s (%d checks, %.1fs)\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), checks, static_cast<double>(ms) / 1000.0);
    for (auto& d : details) std::printf("       - %s\n", d.c_str());
    if (!ok) ++failures;
    std::fflush(stdout);
  }
};

// ---- corpus -------------------------------------------------------------

CdgaPtr line() {
  auto B = Cdga::make();
  B->add_generator("x", 0);
  return B;
}

CdgaPtr plane() {
  auto B = Cdga::make();
  B->add_generator("x1", 0);
  B->add_generator("x2", 0);
  return B;
}

// k[x, zeta | D zeta = x^2]
CdgaPtr crit_line() {
  auto A = Cdga::make();
  int x = A->add_generator("x", 0);
  int z = A->add_generator("zeta", -1);
  A->set_diff(z, A->var(x) * A->var(x));
  return A;
}

// k[x, a, b] with a, b odd of degree -1 and zero differential.
CdgaPtr odd_pair() {
  auto B = Cdga::make();
  B->add_generator("x", 0);
  B->add_generator("a", -1);
  B->add_generator("b", -1);
  return B;
}

// k[x, c] with c of degree -2 and zero differential.
CdgaPtr even_neg() {
  auto B = Cdga::make();
  B->add_generator("x", 0);
  B->add_generator("c", -2);
  return B;
}

// k[x, a, c] with a of degree -1, c of degree -2, zero differential.
CdgaPtr mixed_neg() {
  auto B = Cdga::make();
  B->add_generator("x", 0);
  B->add_generator("a", -1);
  B->add_generator("c", -2);
  return B;
}

// Window containing every monomial below the polydeg cap of the d-shifted
// cotangent corpus, so no checked class sits at a truncation edge.
SliceSpec wide(int d, int polydeg = 4) {
  SliceSpec spec;
  spec.deg_min = -(polydeg + 1) * d - 2;
  spec.deg_max = 2;
  spec.max_polydeg = polydeg;
  return spec;
}

OmegaSliceSpec owide(int d, int polydeg = 4) {
  OmegaSliceSpec spec;
  spec.base = wide(d, polydeg);
  spec.max_wedge = 4;
  return spec;
}

// Sym-type de Rham fixture: algebra with designated fiber plus a twist.
struct DrFixture {
  CdgaPtr alg;
  OmegaModelPtr model;
  std::vector<Poly> xi;
};

DrFixture dr_cot1() {
  auto A = Cdga::make();
  int x = A->add_generator("x", 0);
  A->add_generator("y", -1);
  return {A, make_omega(A, 1), {A->var(x) * A->var(x)}};
}

DrFixture dr_cot1_rank2() {
  auto A = Cdga::make();
  int x1 = A->add_generator("x1", 0);
  int x2 = A->add_generator("x2", 0);
  A->add_generator("y1", -1);
  A->add_generator("y2", -1);
  return {A, make_omega(A, 2),
          {A->var(x1) * A->var(x1), A->var(x1) * A->var(x2)}};
}

DrFixture dr_mixed() {
  auto A = Cdga::make();
  int x = A->add_generator("x", 0);
  int y1 = A->add_generator("y1", -1);
  int y2 = A->add_generator("y2", -2);
  A->set_diff(y2, A->var(x) * A->var(y1));
  return {A, make_omega(A, 1), {A->var(x) * A->var(x), A->zero()}};
}

DrFixture dr_crit_base() {
  auto A = Cdga::make();
  int x = A->add_generator("x", 0);
  int z = A->add_generator("zeta", -1);
  A->set_diff(z, A->var(x) * A->var(x) * A->var(x));
  A->add_generator("y", -1);
  return {A, make_omega(A, 2), {A->var(x) * A->var(x)}};
}

DrFixture dr_cot2() {
  auto A = Cdga::make();
  A->add_generator("x", 0);
  A->add_generator("y", -2);
  return {A, make_omega(A, 1), {A->zero()}};
}

Poly random_form(const OmegaModelPtr& m, std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), nfact(0, 3), coeff(-3, 3),
      pick(0, m->forms->size() - 1);
  Poly p(m->forms.get());
  for (int t = nterms(rng); t > 0; --t) {
    Poly mono = m->forms->one();
    for (int f = nfact(rng); f > 0; --f) mono = mono * m->forms->var(pick(rng));
    int c = coeff(rng);
    if (c != 0) p += mono * Rational(c);
  }
  return p;
}

DeRhamElement wrap(const OmegaModelPtr& m, const Poly& p) {
  return DeRhamElement::make(m, p, 0, 12);
}

// Rank-k subcomplex of the pairing target spanned by named basis elements,
// with the Lagrangian certificates solved.
std::optional<LagrangianData> axis_lagrangian(
    const SymmetricComplex& s, const std::vector<std::string>& names,
    const SliceSpec& spec) {
  std::vector<BasisElement> cells;
  for (auto& n : names) {
    int i = s.mod->find(n);
    if (i < 0) return std::nullopt;
    cells.push_back({n, s.mod->basis(i).degree, std::nullopt});
  }
  auto sub = DgModule::make(s.mod->base(), cells);
  DgMap incl(sub, s.mod, 0);
  for (int j = 0; j < static_cast<int>(names.size()); ++j)
    incl.set_entry(s.mod->find(names[static_cast<std::size_t>(j)]), j,
                   s.mod->base()->one());
  return complete_lagrangian(s, sub, incl, spec);
}

SurgeryWitness plain_witness(const CdgaPtr& A, const DualityContext& ctx,
                             const LagrangianData& lag) {
  SurgeryWitness w;
  w.stabilizer = hyperbolic(DgModule::make(A, {}), ctx);
  w.lag = lag;
  return w;
}

// ---- criteria -----------------------------------------------------------

// 1. The six operator relations among d, Dbar, iota_xi, Lie_xi, the
// Koszul contraction and the Euler Lie derivative, exactly, on random
// truncated de Rham elements over five fixture algebras.
void criterion1() {
  Criterion c{"operator relation suite"};
  std::mt19937 rng(101);
  int elements = 0;
  for (auto fix : {dr_cot1(), dr_cot1_rank2(), dr_mixed(), dr_cot2(),
                   dr_crit_base()}) {
    auto& m = fix.model;
    auto E = euler_field(m);
    auto xi = twist_field(m, fix.xi);
    for (int trial = 0; trial < 45; ++trial) {
      auto w = wrap(m, random_form(m, rng));
      ++elements;
      auto Dk = [&](const DeRhamElement& v) { return contract(E, v); };
      auto Ix = [&](const DeRhamElement& v) { return contract(xi, v); };
      auto Lx = [&](const DeRhamElement& v) { return lie(xi, v); };
      auto LE = [&](const DeRhamElement& v) { return lie(E, v); };
      auto Db = [&](const DeRhamElement& v) { return apply_D(v); };
      auto dd = [&](const DeRhamElement& v) { return apply_d(v); };
      c.check((dd(Dk(w)) + Dk(dd(w))).value == LE(w).value,
              "[d, D_Kos] = Lie_E");
      c.check((Dk(Lx(w)) + Lx(Dk(w))).value == -Ix(w).value,
              "[D_Kos, Lie_xi] = -iota_xi");
      c.check((LE(Lx(w)) - Lx(LE(w))).value == -Lx(w).value,
              "[Lie_E, Lie_xi] = -Lie_xi");
      c.check((Dk(Ix(w)) - Ix(Dk(w))).value.is_zero(), "[D_Kos, iota_xi] = 0");
      c.check((Db(Dk(w)) + Dk(Db(w))).value.is_zero(), "[Dbar, D_Kos] = 0");
      c.check((Db(dd(w)) + dd(Db(w))).value.is_zero(), "[Dbar, d] = 0");
    }
  }
  c.check(elements >= 200, "at least 200 random elements");
  c.finish(1);
}

// 2. The exponential of the twist intertwines the untwisted and twisted
// total differentials.
void criterion2() {
  Criterion c{"exponential intertwining"};
  std::mt19937 rng(102);
  auto mf = dr_mixed();
  mf.xi = {mf.alg->zero(), mf.alg->zero()};  // chain-map twists only
  for (auto fix : {dr_cot1(), dr_cot1_rank2(), dr_crit_base(), mf}) {
    auto& m = fix.model;
    auto xi = twist_field(m, fix.xi);
    for (int trial = 0; trial < 50; ++trial) {
      auto w = wrap(m, random_form(m, rng));
      auto lhs = apply_d(exp_xi(xi, w)) + apply_D(exp_xi(xi, w));
      auto rhs = exp_xi(xi, apply_d(w) + apply_D(w) + lie(xi, w));
      c.check(lhs.value == rhs.value,
              "(d + D_A - Lie_xi) e^xi = e^xi (d + Dbar)");
    }
  }
  c.finish(2);
}

// 3. Graded pieces of the filtered total complex against the kernel-model
// description, on shifted cotangent models.
void criterion3() {
  Criterion c{"graded piece comparison"};
  for (int d = 1; d <= 3; ++d) {
    auto ctx = calibrate(d);
    for (auto& B : {line(), plane()}) {
      auto sc = shifted_cotangent(B, ctx);
      OmegaSliceSpec spec;
      spec.base = SliceSpec{-2 * d - 4, 3, B->size() > 1 ? 5 : 7,
                            std::nullopt};
      spec.max_wedge = 5;
      for (int lambda : {1, 2, 3})
        for (int p : {1, 2})
          for (int i : {p, p + 1}) {
            auto rep = graded_piece_model(sc.model, p, i, lambda, spec);
            c.check(rep.agree, "d=" + std::to_string(d) +
                                   " lambda=" + std::to_string(lambda) +
                                   " p=" + std::to_string(p) +
                                   " i=" + std::to_string(i));
          }
    }
  }
  c.finish(3);
}

// 4. Connectivity equivalence on random prefix inclusions: the two
// characterizations agree, and when they hold the boundary dimension
// count matches.
void criterion4() {
  Criterion c{"connectivity equivalence"};
  std::mt19937 rng(104);
  std::uniform_int_distribution<int> ncell(1, 4), degpick(-3, 0),
      coeff(-2, 2), cut(1, 4);
  int done = 0;
  while (done < 30) {
    auto A = Cdga::make();
    int n = ncell(rng);
    for (int i = 0; i < n; ++i) {
      int deg = i == 0 ? 0 : degpick(rng);
      int g = A->add_generator("z" + std::to_string(i), deg);
      if (deg < 0) {
        // random differential of the right degree in earlier generators,
        // accepted only when it is itself closed
        Poly cand(A.get());
        for (int j = 0; j < g; ++j)
          for (int k = j; k < g; ++k) {
            Poly m = A->var(j) * A->var(k);
            if (m.degree() == deg + 1) {
              int cc = coeff(rng);
              if (cc != 0) cand += m * Rational(cc);
            }
          }
        for (int j = 0; j < g; ++j)
          if (A->gen(j).degree == deg + 1) {
            int cc = coeff(rng);
            if (cc != 0) cand += A->var(j) * Rational(cc);
          }
        if (A->d(cand).is_zero()) A->set_diff(g, cand);
      }
    }
    if (!check_presentation(*A).pass) continue;
    int k = std::min(cut(rng), n);
    auto B = Cdga::make();
    for (int i = 0; i < k; ++i) {
      B->add_generator(A->gen(i).name, A->gen(i).degree);
      if (!A->diff(i).is_zero()) {
        std::vector<int> idmap(static_cast<std::size_t>(A->size()), -1);
        for (int j = 0; j < k; ++j) idmap[static_cast<std::size_t>(j)] = j;
        bool ok = true;
        for (auto& [mono, cc] : A->diff(i).terms())
          for (auto& [g2, e] : mono.factors)
            if (g2 >= k) ok = false;
        if (!ok) { B = nullptr; break; }
        B->set_diff(i, transport(A->diff(i), B.get(), idmap));
      }
    }
    if (!B) continue;
    ++done;
    SliceSpec spec{-5, 1, 5, std::nullopt};
    for (int d : {1, 2}) {
      auto rep = check_connectivity(B, A, d, spec);
      c.check(rep.agree, "conditions (i)/(ii) disagree, instance " +
                             std::to_string(done) + " d=" +
                             std::to_string(d));
      if (rep.cond_i)
        c.check(rep.moreover_holds, "boundary dimension count, instance " +
                                        std::to_string(done) + " d=" +
                                        std::to_string(d));
    }
  }
  c.finish(4);
}

// 5. The standard (possibly twisted) form on every corpus shifted
// cotangent bundle is closed, nondegenerate and symmetric.
void criterion5() {
  Criterion c{"standard form validity"};
  struct Case {
    CdgaPtr B;
    int d;
    Poly f;
  };
  std::vector<Case> cases;
  auto add = [&](CdgaPtr B, int d, Poly f) {
    cases.push_back({std::move(B), d, std::move(f)});
  };
  for (auto& B : {line(), plane(), crit_line(), odd_pair(), even_neg()})
    for (int d = 1; d <= 4; ++d) {
      // conjugate generators must stay in non-positive degree
      bool fits = true;
      for (int i = 0; i < B->size(); ++i)
        fits = fits && B->gen(i).degree >= -d;
      if (fits) add(B, d, B->zero());
    }
  {
    auto B = line();
    add(B, 1, B->var("x") * B->var("x") * B->var("x") *
                  Rational(Integer(1), Integer(3)));
  }
  {
    auto B = plane();
    add(B, 1, B->var("x1") * B->var("x1") * B->var("x2"));
  }
  {
    auto B = crit_line();
    add(B, 1, B->var("x") * B->var("x"));
  }
  {
    auto B = odd_pair();
    add(B, 2, B->var("x") * B->var("a"));
    add(B, 3, B->var("x") * B->var("a") * B->var("b"));
  }
  {
    auto B = even_neg();
    add(B, 3, B->var("x") * B->var("c"));
  }
  {
    auto B = mixed_neg();
    add(B, 4, B->var("x") * B->var("a") * B->var("c"));
  }
  for (auto& cs : cases) {
    auto ctx = calibrate(cs.d);
    auto sc = cs.f.is_zero() ? shifted_cotangent(cs.B, ctx)
                             : twisted_standard_form(cs.B, ctx, cs.f);
    int polydeg = cs.d >= 3 ? 3 : 4;
    auto spec = wide(cs.d, polydeg);
    // untwisted models are weight-graded: exact (and small) weight slices
    if (cs.f.is_zero()) spec.max_weight = 2;
    auto rep = verify_symplectic(sc.model, sc.omega, ctx, spec);
    c.check(rep.pass(), "d=" + std::to_string(cs.d) + " base rank " +
                            std::to_string(cs.B->size()) +
                            (cs.f.is_zero() ? " untwisted" : " twisted"));
  }
  c.finish(5);
}

// 6. Darboux roundtrip: build the twisted standard model for a planted
// potential, run the pipeline from the zero-section witness, and demand
// the pushed-forward standard form equals the input as truncated
// representatives and the recovered potential matches the planted one.
void criterion6() {
  Criterion c{"darboux roundtrip"};
  std::mt19937 rng(106);
  std::uniform_int_distribution<int> coeff(1, 5);
  auto rat = [&] { return Rational(coeff(rng)); };

  struct Inst {
    CdgaPtr B;
    int d;
    Poly f;
  };
  std::vector<Inst> instances;
  auto add = [&](CdgaPtr B, int d, Poly f) {
    instances.push_back({std::move(B), d, std::move(f)});
  };
  // A valid base for the d-shifted normal form has generator degrees
  // >= -floor((d-1)/2), and the potential is homogeneous of degree 1 - d:
  // nonzero potentials therefore need d = 1 (degree-0 bases), or odd
  // generators of degree -1 for d in {3, 4}; for d = 2 only the untwisted
  // and quadratic-block instances exist over such bases.
  for (int rep = 0; rep < 2; ++rep) {
    {
      auto B = line();
      Poly x = B->var("x");
      add(B, 1, x * x * x * (Rational(1) / rat()));
      add(B, 1, x * x * rat());
      add(B, 1, x * x * x * x * rat() + x * x * rat());
      add(B, 2, B->zero());
      add(B, 4, B->zero());
    }
    {
      auto B = plane();
      Poly x1 = B->var("x1"), x2 = B->var("x2");
      add(B, 1, x1 * x2 * rat());
      add(B, 1, x1 * x1 * x2 * rat() + x2 * x2 * x2 * rat());
      add(B, 2, B->zero());
      add(B, 3, B->zero());
    }
    {
      auto B = odd_pair();
      add(B, 3, B->var("x") * B->var("a") * B->var("b") * rat());
      add(B, 3, B->var("a") * B->var("b") * rat() +
                    B->var("x") * B->var("x") * B->var("a") * B->var("b") *
                        rat());
    }
    {
      auto B = Cdga::make();  // three odd lines, the degree -3 potential
      B->add_generator("a", -1);
      B->add_generator("b", -1);
      B->add_generator("c", -1);
      add(B, 4, B->var("a") * B->var("b") * B->var("c") * rat());
    }
  }

  int done = 0;
  for (auto& inst : instances) {
    auto ctx = calibrate(inst.d);
    auto sc = inst.f.is_zero() ? shifted_cotangent(inst.B, ctx)
                               : twisted_standard_form(inst.B, ctx, inst.f);
    int polydeg = inst.d >= 3 ? 3 : 4;
    auto spec = wide(inst.d, polydeg);
    auto ospec = owide(inst.d, polydeg);
    std::vector<std::string> axes;
    for (int i = 0; i < inst.B->size(); ++i)
      axes.push_back("d" + inst.B->gen(i).name);
    DgMap phi = two_form_pairing(sc.model, sc.omega.component(2), ctx);
    SymmetricComplex sym{phi.dst(), phi, ctx};
    auto lag = axis_lagrangian(sym, axes, spec);
    std::string tag = "d=" + std::to_string(inst.d) + " base rank " +
                      std::to_string(inst.B->size()) + " instance " +
                      std::to_string(done);
    if (!lag) {
      c.check(false, tag + ": no zero-section Lagrangian certificates");
      continue;
    }
    auto res = darboux_pipeline(sc.total, sc.model, sc.omega,
                                plain_witness(sc.total, ctx, *lag), ctx, spec,
                                ospec);
    c.check(res.ok, tag + ": pipeline failed" +
                        (res.notes.empty() ? "" : " (" + res.notes.back() +
                                                      ")"));
    if (!res.ok) continue;
    c.check(res.delta_zero,
            tag + ": pushed-forward standard form differs from input");
    // recovered potential against the planted one, matching base
    // generators by name (an allowed base identification)
    std::vector<int> genmap(static_cast<std::size_t>(inst.B->size()), -1);
    bool names_ok = true;
    for (int i = 0; i < inst.B->size(); ++i) {
      genmap[static_cast<std::size_t>(i)] = res.B->find(inst.B->gen(i).name);
      names_ok = names_ok && genmap[static_cast<std::size_t>(i)] >= 0;
    }
    c.check(names_ok, tag + ": base generators not recovered by name");
    if (names_ok) {
      Poly planted = transport(inst.f, res.B.get(), genmap);
      Poly diff = res.f - planted;
      c.check(diff.is_zero() || !diff.degree().has_value() ||
                  diff == Poly(res.B.get(), diff.constant_term()),
              tag + ": potential differs beyond an additive constant");
    }
    ++done;
  }
  c.check(done >= 20, "at least 20 roundtrip instances completed");

  // one rank-1 middle quadratic block at d = 2
  {
    auto ctx = calibrate(2);
    auto sc = shifted_cotangent(line(), ctx);
    auto A = Cdga::make();
    A->add_generator("x", 0);
    A->add_generator("q", -1);
    A->add_generator("y_x", -2);
    auto model = make_omega(A, 1);
    auto& F = model->forms;
    Poly std_part = transport(sc.omega.value, F.get(), {0, 2, 3, 5});
    Poly quad =
        F->var("dq") * F->var("dq") * Rational(Integer(1), Integer(2));
    auto omega = DeRhamElement::make(model, std_part + quad,
                                     sc.omega.p_floor, sc.omega.max_wedge);
    DgMap phi = two_form_pairing(model, omega.component(2), ctx);
    SymmetricComplex sym{phi.dst(), phi, ctx};
    auto split = split_off_quadratic(sym, wide(2));
    bool has_middle = split.middle.has_value();
    c.check(has_middle, "d=2 middle block detected");
    if (has_middle) {
      auto lag = axis_lagrangian(split.metabolic, {"dx"}, wide(2));
      c.check(lag.has_value(), "d=2 quadratic: metabolic zero section");
      if (lag) {
        auto res = darboux_pipeline(A, model, omega,
                                    plain_witness(A, ctx, *lag), ctx, wide(2),
                                    owide(2));
        c.check(res.ok && res.quadratic && res.quadratic->mod->rank() == 1 &&
                    !res.quadratic_flagged && res.f.is_zero(),
                "d=2 rank-1 quadratic block roundtrip");
      }
    }
  }
  c.finish(6);
}

// 7. Surgery output satisfies the connectivity normalization
// H^i(S-dagger) = 0 for i >= -floor((d-1)/2).
void criterion7() {
  Criterion c{"surgery normalization"};
  struct Fix {
    std::string name;
    SymmetricComplex s;
    LagrangianData lag;
    SliceSpec spec;
  };
  std::vector<Fix> fixtures;

  {  // hyperbolic on k in degree 0, d = 2
    auto ctx = calibrate(2);
    auto A = Cdga::make();
    auto N = DgModule::make(A, {{"n", 0, std::nullopt}});
    auto h = hyperbolic(N, ctx);
    SliceSpec spec{-6, 2, 3, std::nullopt};
    auto lag = axis_lagrangian(h, {"n"}, spec);
    if (lag) fixtures.push_back({"hyperbolic d=2", h, *lag, spec});
    c.check(lag.has_value(), "hyperbolic d=2 witness");
  }
  {  // shifted hyperbolic on k in degree -1, d = 2
    auto ctx = calibrate(2);
    auto A = Cdga::make();
    auto N = DgModule::make(A, {{"n", -1, std::nullopt}});
    auto h = hyperbolic(N, ctx);
    SliceSpec spec{-6, 2, 3, std::nullopt};
    auto lag = axis_lagrangian(h, {"n"}, spec);
    if (lag) fixtures.push_back({"shifted hyperbolic d=2", h, *lag, spec});
    c.check(lag.has_value(), "shifted hyperbolic d=2 witness");
  }
  {  // standard cotangent pairing of T*[1] of the line, zero section
    auto ctx = calibrate(1);
    auto sc = shifted_cotangent(line(), ctx);
    DgMap phi = two_form_pairing(sc.model, sc.omega.component(2), ctx);
    SymmetricComplex sym{phi.dst(), phi, ctx};
    auto lag = axis_lagrangian(sym, {"dx"}, wide(1));
    if (lag) fixtures.push_back({"cotangent d=1", sym, *lag, wide(1)});
    c.check(lag.has_value(), "cotangent d=1 witness");
  }
  {  // twisted pairing on the derived critical locus of x^3/3, d = 1
    auto ctx = calibrate(1);
    auto B = line();
    auto sc = twisted_standard_form(
        B, ctx, B->var("x") * B->var("x") * B->var("x") *
                    Rational(Integer(1), Integer(3)));
    DgMap phi = two_form_pairing(sc.model, sc.omega.component(2), ctx);
    SymmetricComplex sym{phi.dst(), phi, ctx};
    auto lag = axis_lagrangian(sym, {"dx"}, wide(1));
    if (lag) fixtures.push_back({"critical locus d=1", sym, *lag, wide(1)});
    c.check(lag.has_value(), "critical locus d=1 witness");
  }

  for (auto& fx : fixtures) {
    auto res = surgery_to_lagrangian(
        fx.s, plain_witness(fx.s.mod->base(), fx.s.ctx, fx.lag), fx.spec);
    c.check(res.normalized, fx.name + ": not normalized");
    int bound = -((fx.s.ctx.d - 1) / 2);
    auto coh = cohomology(dagger(res.lag.sub, fx.s.ctx), fx.spec);
    for (auto& e : coh.entries)
      if (e.degree >= bound)
        c.check(e.dim == 0, fx.name + ": H^" + std::to_string(e.degree) +
                                "(S-dagger) nonzero");
  }
  c.finish(7);
}

// 8. Tor amplitude duality on random 2-3 term complexes, cross-checked
// against the residue-field probes on the explicit dual.
void criterion8() {
  Criterion c{"tor amplitude duality"};
  std::mt19937 rng(108);
  auto A = Cdga::make();
  A->add_generator("x", 0);
  A->add_generator("y", 0);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 36; ++trial) {
    int terms = 2 + (trial % 2);
    std::vector<BasisElement> basis;
    for (int i = 0; i < terms; ++i)
      basis.push_back({"e" + std::to_string(i), -i, std::nullopt});
    auto N = DgModule::make(A, basis);
    int where = trial % (terms - 1);
    Poly e(A.get());
    switch (pick(rng)) {
      case 0: e = A->zero(); break;
      case 1: e = A->var(0); break;
      case 2: e = A->var(1); break;
      case 3: e = A->var(0) * A->var(1) - A->one(); break;
    }
    N->set_diff(where, where + 1, e);
    c.check(N->validate().pass, "random complex is valid");
    auto amp = tor_amplitude(*N);
    auto dual = tor_amplitude_dual(*N);
    if (!amp) {
      c.check(!dual.has_value(), "zero module has zero dual");
    } else {
      c.check(dual.has_value() && dual->first == -amp->second &&
                  dual->second == -amp->first,
              "amplitude [a,b] <-> dual amplitude [-b,-a], trial " +
                  std::to_string(trial));
    }
  }
  c.finish(8);
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments select individual criteria by number
  auto want = [&](int n) {
    if (argc < 2) return true;
    for (int i = 1; i < argc; ++i)
      if (std::stoi(argv[i]) == n) return true;
    return false;
  };
  if (want(1)) criterion1();
  if (want(2)) criterion2();
  if (want(3)) criterion3();
  if (want(4)) criterion4();
  if (want(5)) criterion5();
  if (want(6)) criterion6();
  if (want(7)) criterion7();
  if (want(8)) criterion8();
  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
