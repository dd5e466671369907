#include "dgsw/darboux.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "dgsw/cotangent.hpp"
#include "dgsw/linalg.hpp"

namespace dgsw {

namespace {

int mono_degree(const Cdga* alg, const Monomial& m) {
  int s = 0;
  for (auto& [g, e] : m.factors) s += e * alg->gen(g).degree;
  return s;
}

void enumerate_rec(const Cdga* alg, int g, int budget, Monomial& cur,
                   std::vector<Monomial>& out) {
  if (g == alg->size()) {
    out.push_back(cur);
    return;
  }
  enumerate_rec(alg, g + 1, budget, cur, out);
  int maxe = alg->gen(g).odd() ? 1 : budget;
  for (int e = 1; e <= maxe; ++e) {
    cur.factors.emplace_back(g, e);
    enumerate_rec(alg, g + 1, budget - e, cur, out);
    cur.factors.pop_back();
  }
}

std::vector<Monomial> enumerate_monomials(const Cdga* alg, int max_polydeg) {
  std::vector<Monomial> out;
  Monomial cur;
  enumerate_rec(alg, 0, max_polydeg, cur, out);
  return out;
}

std::vector<Monomial> monomials_of_degree(const Cdga* alg, int degree,
                                          int max_polydeg) {
  std::vector<Monomial> out;
  for (auto& m : enumerate_monomials(alg, max_polydeg))
    if (mono_degree(alg, m) == degree) out.push_back(m);
  return out;
}

// Sparse linear system over coordinates (block, index, monomial); columns
// are unknowns, assembled into a dense QMatrix for the solve.
struct LinSys {
  using Key = std::tuple<int, int, Monomial>;
  std::map<Key, std::size_t> rows;
  std::vector<std::map<Key, Rational>> cols;
  std::map<Key, Rational> rhs;

  std::size_t row(const Key& k) {
    auto it = rows.find(k);
    if (it != rows.end()) return it->second;
    std::size_t id = rows.size();
    rows.emplace(k, id);
    return id;
  }
  void add_col() { cols.emplace_back(); }
  void add(int block, int idx, const Poly& p) {
    for (auto& [m, c] : p.terms()) {
      row({block, idx, m});
      cols.back()[{block, idx, m}] += c;
    }
  }
  void add_rhs(int block, int idx, const Poly& p) {
    for (auto& [m, c] : p.terms()) {
      row({block, idx, m});
      rhs[{block, idx, m}] += c;
    }
  }
  std::optional<std::vector<Rational>> solve() const {
    QMatrix mat(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (auto& [k, c] : cols[j]) mat.at(rows.at(k), j) = c;
    std::vector<Rational> b(rows.size(), Rational(0));
    for (auto& [k, c] : rhs) b[rows.at(k)] = c;
    return mat.solve(b);
  }
};

// The cotangent module of B base-changed to A along `to_A`.
DgModulePtr tangent_module(const CdgaPtr& B, const CdgaMorphism& to_A,
                           const CdgaPtr& A) {
  auto LB = cotangent_complex(B).mod;
  return base_change(LB, to_A, A);
}

}  // namespace

PresentationReport FoliationData::validate() const {
  PresentationReport rep;
  if (!alg || !sub) {
    rep.fail("foliation: missing algebra or subcomplex");
    return rep;
  }
  auto srep = sub->validate();
  if (!srep.pass) {
    rep.fail("foliation: subcomplex invalid: " + srep.violations.front());
    return rep;
  }
  auto irep = incl.validate();
  if (!irep.pass)
    rep.fail("foliation: inclusion not a chain map: " +
             irep.violations.front());
  if (incl.src()->rank() != sub->rank() ||
      incl.dst()->rank() != alg->size())
    rep.fail("foliation: inclusion endpoints do not match the triangle");
  if (prefix) {
    int nb = prefix->size();
    if (nb > alg->size()) {
      rep.fail("foliation: prefix larger than the algebra");
      return rep;
    }
    for (int i = 0; i < nb; ++i)
      if (prefix->gen(i).name != alg->gen(i).name ||
          prefix->gen(i).degree != alg->gen(i).degree)
        rep.fail("foliation: generator " + prefix->gen(i).name +
                 " is not a prefix match");
    if (!rep.pass) return rep;
    // The descended exterior differential: d^2 = 0 on the quotient basis
    // and strict commutation of the square on basis one-forms, computed
    // in the forms model (the quotient kills the prefix directions).
    auto m = make_omega(alg);
    for (int g = 0; g < alg->size(); ++g) {
      auto one_form =
          DeRhamElement::make(m, m->forms->var(alg->size() + g), 0, 4);
      auto dd = apply_d(apply_d(one_form));
      if (!dd.is_zero())
        rep.fail("foliation: d^2 nonzero on d" + alg->gen(g).name);
      // beta drops prefix directions; d commutes with that projection on
      // basis elements since d of a basis one-form vanishes identically.
      auto keep = [&](const Monomial& mo) {
        for (auto& [gg, e] : mo.factors)
          if (gg >= alg->size() && gg - alg->size() < nb) return false;
        return true;
      };
      Poly lhs = apply_d(one_form).value.filter(keep);
      Poly rhs = apply_d(DeRhamElement::make(m, one_form.value.filter(keep),
                                             0, 4))
                     .value.filter(keep);
      if (!(lhs == rhs))
        rep.fail("foliation: exterior square does not commute on d" +
                 alg->gen(g).name);
    }
  }
  return rep;
}

FrobeniusResult frobenius_integrate(const CdgaPtr& A, const DgModulePtr& S,
                                    const DgMap& incl, FrobeniusMode mode,
                                    int s, const SliceSpec& spec) {
  FrobeniusResult res;
  auto LA = incl.dst();
  if (incl.src()->rank() != S->rank() || incl.shift() != 0) {
    res.notes.push_back("inclusion endpoints do not match");
    return res;
  }
  if (!incl.validate().pass) {
    res.notes.push_back("inclusion is not a chain map");
    return res;
  }

  if (mode == FrobeniusMode::tor_bound) {
    if (s <= 0) {
      res.notes.push_back("tor-bound mode needs s > 0");
      return res;
    }
    auto quot = cone(incl).cone;
    auto coh = cohomology(quot, spec);
    for (auto& e : coh.entries)
      if (e.degree > -s && e.dim > 0)
        res.notes.push_back("H^" + std::to_string(e.degree) +
                            "(L_A/S) nonzero above -s");
    auto amp = tor_amplitude(*S);
    if (amp && amp->second - amp->first > 2 * s - 1)
      res.notes.push_back("tor amplitude of S wider than 2s-1");
    if (!res.notes.empty()) return res;
  }

  // Degree-0 generators of A seed B; their one-forms are lifted into S
  // through the inclusion up to homotopy.
  auto B = Cdga::make();
  std::vector<Poly> images;
  std::vector<ModElement> tvals;  // tangent values in S, coefficients in A
  int cap = spec.max_polydeg;

  for (int g = 0; g < A->size(); ++g) {
    if (A->gen(g).degree != 0) continue;
    LinSys sys;
    // Unknowns: t in S (degree 0) then h in L_A (degree -1).
    struct Cand {
      bool in_t;
      int i;
      Monomial m;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < S->rank(); ++i)
      for (auto& m : monomials_of_degree(A.get(), -S->basis(i).degree, cap))
        cands.push_back({true, i, m});
    for (int i = 0; i < LA->rank(); ++i)
      for (auto& m :
           monomials_of_degree(A.get(), -1 - LA->basis(i).degree, cap))
        cands.push_back({false, i, m});
    for (auto& c : cands) {
      sys.add_col();
      auto mono = Poly::monomial(A.get(), c.m, Rational(1));
      if (c.in_t) {
        // incl(t) rows in L_A.
        ModElement e = ModElement::zero(S);
        e.coef[c.i] = mono;
        auto img = incl.apply(e.coef);
        for (int k = 0; k < LA->rank(); ++k) sys.add(0, k, img[k]);
      } else {
        ModElement e = ModElement::zero(LA);
        e.coef[c.i] = mono;
        auto de = LA->d(e.coef);
        for (int k = 0; k < LA->rank(); ++k)
          sys.add(0, k, de[k] * Rational(-1));
      }
    }
    // Right-hand side: the basis one-form of generator g.
    sys.add_rhs(0, g, A->one());
    auto sol = sys.solve();
    if (!sol) {
      res.notes.push_back("no lift of d" + A->gen(g).name +
                          " into the subcomplex (0-connectedness fails)");
      return res;
    }
    B->add_generator(A->gen(g).name, 0);
    images.push_back(A->var(g));
    ModElement t = ModElement::zero(S);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if ((*sol)[c] == Rational(0) || !cands[c].in_t) continue;
      t.coef[cands[c].i] +=
          Poly::monomial(A.get(), cands[c].m, (*sol)[c]);
    }
    tvals.push_back(t);
  }

  auto rebuild_tau = [&](CdgaMorphism& f, DgModulePtr& src) -> DgMap {
    f = CdgaMorphism(B.get(), A.get(), images);
    src = tangent_module(B, f, A);
    DgMap tau(src, S, 0);
    for (std::size_t j = 0; j < tvals.size(); ++j)
      for (int i = 0; i < S->rank(); ++i)
        tau.set_entry(i, static_cast<int>(j), tvals[j].coef[i]);
    return tau;
  };

  int rmax = std::min(-spec.deg_min, 8);
  auto cot_of_B = [&]() { return cotangent_complex(B); };
  for (int r = 0; r <= rmax; ++r) {
    // Attach one cell at a time: killing one class can make the remaining
    // classes in this degree exact (they are module multiples of it), so
    // the cone cohomology is recomputed after every attachment.
    for (int attached = 0;; ++attached) {
      if (attached > 32) {
        res.notes.push_back("cell attachment does not terminate at degree " +
                            std::to_string(-r));
        return res;
      }
      CdgaMorphism f;
      DgModulePtr LBA;
      DgMap tau = rebuild_tau(f, LBA);
      if (!tau.validate().pass) {
        res.notes.push_back("internal: tangent comparison not a chain map");
        return res;
      }
      auto cn = cone(tau);
      auto coh = cohomology(cn.cone, spec);
      std::vector<ModElement> reps;
      for (auto& e : coh.entries)
        if (e.degree == -r)
          for (auto& rep : e.representatives) reps.push_back(rep);
      if (reps.empty()) break;
      auto cotB = cot_of_B();
      ModElement w = reps.front();
      // Joint transgression solve: z in A^{-r}, gamma in B^{-r+1} with
      // D_B gamma = 0 and D_A z = gamma|_A, a lift w~ in S^{-r} with
      // D w~ = -tau(d gamma), and a cone homotopy u making w~ represent
      // the class w.
      LinSys sys;
      struct Cand {
        int block;  // 0 = z, 1 = gamma, 2 = w~, 3 = u
        int i;
        Monomial m;
      };
      std::vector<Cand> cands;
      for (auto& m : monomials_of_degree(A.get(), -r, cap))
        cands.push_back({0, 0, m});
      for (auto& m : monomials_of_degree(B.get(), -r + 1, cap))
        cands.push_back({1, 0, m});
      for (int i = 0; i < S->rank(); ++i)
        for (auto& m :
             monomials_of_degree(A.get(), -r - S->basis(i).degree, cap))
          cands.push_back({2, i, m});
      for (int i = 0; i < cn.cone->rank(); ++i)
        for (auto& m : monomials_of_degree(
                 A.get(), -r - 1 - cn.cone->basis(i).degree, cap))
          cands.push_back({3, i, m});

      for (auto& c : cands) {
        sys.add_col();
        if (c.block == 0) {
          Poly z = Poly::monomial(A.get(), c.m, Rational(1));
          Poly dz = A->d(z);
          sys.add(0, 0, dz);  // equation (a): D_A z - gamma|_A = 0
        } else if (c.block == 1) {
          Poly g = Poly::monomial(B.get(), c.m, Rational(1));
          sys.add(0, 0, f(g) * Rational(-1));  // (a)
          // (d): D_B gamma = 0, recorded over B's monomials.
          sys.add(2, 0, B->d(g));
          // (b): tau(d_B gamma) rows in S.
          auto dg = cotB.d_of(g);  // over L_B with B coefficients
          ModElement lift = ModElement::zero(tau.src());
          for (int j = 0; j < tau.src()->rank(); ++j)
            lift.coef[j] = f(dg.coef[j]);
          auto img = tau.apply(lift.coef);
          for (int k = 0; k < S->rank(); ++k) sys.add(1, k, img[k]);
          // (c): the shifted-source component of the new cell's cone
          // differential, (d gamma)[1], lands in the M[1] block.
          for (int j = 0; j < tau.src()->rank(); ++j)
            sys.add(3, j, lift.coef[j]);
        } else if (c.block == 2) {
          ModElement e = ModElement::zero(S);
          e.coef[c.i] = Poly::monomial(A.get(), c.m, Rational(1));
          auto de = S->d(e.coef);
          for (int k = 0; k < S->rank(); ++k) sys.add(1, k, de[k]);  // (b)
          auto inc = cn.from_target.apply(e.coef);
          for (int k = 0; k < cn.cone->rank(); ++k)
            sys.add(3, k, inc[k]);  // (c)
        } else {
          ModElement e = ModElement::zero(cn.cone);
          e.coef[c.i] = Poly::monomial(A.get(), c.m, Rational(1));
          auto de = cn.cone->d(e.coef);
          for (int k = 0; k < cn.cone->rank(); ++k)
            sys.add(3, k, de[k] * Rational(-1));  // (c)
        }
      }
      for (int k = 0; k < cn.cone->rank(); ++k) sys.add_rhs(3, k, w.coef[k]);
      auto sol = sys.solve();
      if (!sol) {
        res.notes.push_back(
            "no transgression cell for a class at degree " +
            std::to_string(-r));
        return res;
      }
      Poly z(A.get()), gamma(B.get());
      ModElement wt = ModElement::zero(S);
      for (std::size_t c = 0; c < cands.size(); ++c) {
        if ((*sol)[c] == Rational(0)) continue;
        if (cands[c].block == 0)
          z.add_term(cands[c].m, (*sol)[c]);
        else if (cands[c].block == 1)
          gamma.add_term(cands[c].m, (*sol)[c]);
        else if (cands[c].block == 2)
          wt.coef[cands[c].i] +=
              Poly::monomial(A.get(), cands[c].m, (*sol)[c]);
      }
      // When the image is a scalar multiple of a single generator,
      // rescale the attachment so the cell maps to the generator on the
      // nose and can carry its name.
      std::string name = "w" + std::to_string(r) + "_" +
                         std::to_string(attached);
      if (z.terms().size() == 1) {
        auto [m, c] = *z.terms().begin();
        if (m.polydeg() == 1) {
          Rational inv = Rational(1) / c;
          z = z * inv;
          gamma = gamma * inv;
          wt = wt.scale(inv);
          const std::string& nm = A->gen(m.factors[0].first).name;
          if (B->find(nm) < 0) name = nm;
        }
      }
      int gid = B->add_generator(name, -r);
      B->set_diff(gid, gamma);
      images.push_back(z);
      tvals.push_back(wt);
      ++res.cells;
    }
  }

  auto brep = check_presentation(*B);
  if (!brep.pass) {
    res.notes.push_back("assembled base invalid: " + brep.violations.front());
    return res;
  }
  CdgaMorphism f;
  DgModulePtr LBA;
  DgMap tau = rebuild_tau(f, LBA);
  if (!f.validate().pass || !tau.validate().pass) {
    res.notes.push_back("assembled comparison maps fail validation");
    return res;
  }
  res.B = B;
  res.to_A = f;
  res.tangent_src = LBA;
  res.tangent = tau;
  res.ok = is_contractible(cone(tau).cone, spec);
  if (!res.ok)
    res.notes.push_back(
        "residual cohomology in the comparison cone after integration");
  return res;
}

FrobeniusResult frobenius_integrate(const FoliationData& fol,
                                    const SliceSpec& spec) {
  auto rep = fol.validate();
  if (!rep.pass) {
    FrobeniusResult res;
    res.notes = rep.violations;
    return res;
  }
  return frobenius_integrate(fol.alg, fol.sub, fol.incl,
                             FrobeniusMode::foliation, 0, spec);
}

FrobeniusResult choose_base_from_lagrangian(const CdgaPtr& A,
                                            const OmegaModelPtr& model,
                                            const DeRhamElement& omega,
                                            const LagrangianData& lag,
                                            const DualityContext& ctx,
                                            const SliceSpec& spec) {
  FrobeniusResult res;
  DgMap phi = two_form_pairing(model, omega.component(2), ctx);
  if (!phi.validate().pass) {
    res.notes.push_back("two-form pairing is not a chain map");
    return res;
  }
  SymmetricComplex m{phi.dst(), phi, ctx};
  if (!check_lagrangian(m, lag, spec).pass()) {
    res.notes.push_back("Lagrangian witness fails validation");
    return res;
  }
  LagrangianData L = lag;
  int bound = -((ctx.d - 1) / 2);
  auto violates = [&](const LagrangianData& l) {
    auto coh = cohomology(dagger(l.sub, ctx), spec);
    for (auto& e : coh.entries)
      if (e.dim > 0 && e.degree >= bound) return true;
    return false;
  };
  if (violates(L)) {
    SurgeryWitness w;
    w.lag = L;
    auto sres = surgery_to_lagrangian(m, w, spec);
    for (auto& n : sres.notes) res.notes.push_back(n);
    if (!sres.normalized) {
      res.notes.push_back(
          "Lagrangian cannot be surgered to the connectivity bound");
      return res;
    }
    L = sres.lag;
  }
  int s = (ctx.d - 1) / 2 + 1;
  auto fb = frobenius_integrate(A, L.sub, L.incl, FrobeniusMode::tor_bound,
                                s, spec);
  fb.notes.insert(fb.notes.begin(), res.notes.begin(), res.notes.end());
  return fb;
}

namespace {

// Substitute an algebra endomorphism into a differential form: z_g maps
// to its image and dz_g to the exterior derivative of that image.
Poly push_form(const OmegaModelPtr& m, const CdgaMorphism& a,
               const Poly& w) {
  int n = m->ngens();
  std::vector<Poly> imgs(2 * static_cast<std::size_t>(n));
  for (int g = 0; g < n; ++g) {
    imgs[g] = m->lift(a(Poly::generator(a.src(), g)));
    imgs[n + g] = m->d(imgs[g]);
  }
  CdgaMorphism sub(m->forms.get(), m->forms.get(), imgs);
  return sub(w);
}

// Substitute a morphism between two presentations into a form on the
// source model, landing in the destination model.
Poly push_form_across(const OmegaModelPtr& src, const OmegaModelPtr& dst,
                      const CdgaMorphism& a, const Poly& w) {
  int ns = src->ngens();
  std::vector<Poly> imgs(2 * static_cast<std::size_t>(ns));
  for (int g = 0; g < ns; ++g) {
    imgs[g] = dst->lift(a(Poly::generator(a.src(), g)));
    imgs[ns + g] = dst->d(imgs[g]);
  }
  CdgaMorphism sub(src->forms.get(), dst->forms.get(), imgs);
  return sub(w);
}

// Search for a shift-0 chain quasi-isomorphism src -> dst over the
// common base: nullspace of the chain condition over the monomial
// ansatz, then deterministic small combinations tested by is_quis.
std::optional<DgMap> find_quis_map(const DgModulePtr& src,
                                   const DgModulePtr& dst, int max_polydeg,
                                   const SliceSpec& spec) {
  const Cdga* alg = dst->alg();
  struct Cand {
    int i, j;
    Monomial m;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < dst->rank(); ++i)
    for (int j = 0; j < src->rank(); ++j)
      for (auto& m : monomials_of_degree(
               alg, src->basis(j).degree - dst->basis(i).degree,
               max_polydeg))
        cands.push_back({i, j, m});
  if (cands.empty()) return std::nullopt;
  std::map<std::tuple<int, int, Monomial>, std::size_t> rows;
  std::vector<std::map<std::tuple<int, int, Monomial>, Rational>> cols;
  for (auto& c : cands) {
    DgMap e(src, dst, 0);
    e.set_entry(c.i, c.j, Poly::monomial(alg, c.m, Rational(1)));
    DgMap comm = d_commutator(e);
    cols.emplace_back();
    for (int i = 0; i < dst->rank(); ++i)
      for (int j = 0; j < src->rank(); ++j)
        for (auto& [mm, cc] : comm.entry(i, j).terms()) {
          auto key = std::make_tuple(i, j, mm);
          if (!rows.count(key)) rows.emplace(key, rows.size());
          cols.back()[key] += cc;
        }
  }
  QMatrix mat(rows.size(), cands.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto& [k, c] : cols[j]) mat.at(rows.at(k), j) = c;
  auto null = mat.nullspace();
  if (null.empty()) return std::nullopt;

  auto assemble = [&](const std::vector<Rational>& v) {
    DgMap X(src, dst, 0);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (v[c] == Rational(0)) continue;
      Poly e = X.entry(cands[c].i, cands[c].j);
      e.add_term(cands[c].m, v[c]);
      X.set_entry(cands[c].i, cands[c].j, e);
    }
    return X;
  };
  std::vector<std::vector<Rational>> trials = null;
  if (null.size() > 1) {
    std::vector<Rational> sum(cands.size(), Rational(0));
    for (auto& v : null)
      for (std::size_t c = 0; c < v.size(); ++c) sum[c] += v[c];
    trials.push_back(sum);
    for (std::size_t a = 0; a + 1 < null.size() && null.size() <= 8; ++a)
      for (std::size_t b = a + 1; b < null.size(); ++b) {
        std::vector<Rational> pair(cands.size(), Rational(0));
        for (std::size_t c = 0; c < cands.size(); ++c)
          pair[c] = null[a][c] + null[b][c];
        trials.push_back(pair);
      }
  }
  for (auto& v : trials) {
    DgMap X = assemble(v);
    if (X.validate().pass && is_quis(X, spec)) return X;
  }
  return std::nullopt;
}

// Middle-degree quadratic obstruction of a pairing column: the part of
// the fiber rows whose coefficients are linear in a middle-degree fiber
// variable, returned as a one-form over the model.
Poly middle_obstruction(const OmegaModelPtr& m, const DgMap& phi, int col,
                        int fiber_start, int d) {
  const Cdga* A = m->base.get();
  int n = m->ngens();
  Poly out(m->forms.get());
  for (int b = 0; b < n; ++b) {
    if (b < fiber_start || 2 * A->gen(b).degree != -d) continue;
    Poly part(A);
    for (auto& [mono, c] : phi.entry(b, col).terms()) {
      bool mid = false;
      for (auto& [g, e] : mono.factors)
        if (g >= fiber_start && 2 * A->gen(g).degree == -d) mid = true;
      if (mid) part.add_term(mono, c);
    }
    if (part.is_zero()) continue;
    std::vector<int> zmap(A->size());
    for (int i = 0; i < A->size(); ++i) zmap[i] = i;
    out += transport(part, m->forms.get(), zmap) * m->forms->var(n + b);
  }
  return out;
}

}  // namespace

NormalizedPresentation normalize_presentation(const CdgaPtr& B,
                                              const CdgaPtr& A,
                                              const OmegaModelPtr& model,
                                              const Poly& omega2,
                                              const DualityContext& ctx,
                                              const SliceSpec& spec) {
  NormalizedPresentation res;
  res.alpha = CdgaMorphism::identity(A.get());
  res.omega2 = omega2;
  int nb = B->size(), na = A->size();
  for (int i = 0; i < nb; ++i)
    if (i >= na || B->gen(i).name != A->gen(i).name ||
        B->gen(i).degree != A->gen(i).degree) {
      res.notes.push_back("base is not a generator prefix of the algebra");
      return res;
    }
  int d = ctx.d;
  int lo = (d + 2) / 2;  // ceil((d + 1) / 2)
  int nf = na - nb;
  if (nf == 0) {
    res.notes.push_back("no fiber generators to normalize");
    return res;
  }
  for (int g = nb; g < na; ++g) {
    int neg = -A->gen(g).degree;
    if (neg < lo || neg > d) {
      res.notes.push_back("fiber generator " + A->gen(g).name +
                          " outside the degree window [" +
                          std::to_string(lo) + ", " + std::to_string(d) +
                          "]");
      return res;
    }
  }

  // Split D y_j = lambda_j + sum_i mu_ij y_i; linearity is forced by the
  // window and any violation is a hard error.
  std::vector<int> toB(static_cast<std::size_t>(nb));
  for (int i = 0; i < nb; ++i) toB[static_cast<std::size_t>(i)] = i;
  std::vector<Poly> lambda(static_cast<std::size_t>(nf), B->zero());
  std::vector<std::vector<Poly>> mu(
      static_cast<std::size_t>(nf),
      std::vector<Poly>(static_cast<std::size_t>(nf), B->zero()));
  for (int j = 0; j < nf; ++j) {
    const Poly& h = A->diff(nb + j);
    for (auto& [mono, c] : h.terms()) {
      int fiber_deg = 0, fiber_idx = -1;
      Monomial base_part;
      for (auto& [g, e] : mono.factors) {
        if (g >= nb) {
          fiber_deg += e;
          fiber_idx = g - nb;
        } else {
          base_part.factors.push_back({g, e});
        }
      }
      if (fiber_deg == 0) {
        Poly t(A.get());
        t.add_term(mono, c);
        lambda[static_cast<std::size_t>(j)] += transport(t, B.get(), toB);
      } else if (fiber_deg == 1) {
        Poly t(A.get());
        t.add_term(base_part, c);
        mu[static_cast<std::size_t>(fiber_idx)][static_cast<std::size_t>(
            j)] += transport(t, B.get(), toB);
      } else {
        res.notes.push_back(
            "nonlinear fiber term in D" + A->gen(nb + j).name +
            " (violates the degree window arithmetic)");
        return res;
      }
    }
  }

  std::vector<BasisElement> fb(static_cast<std::size_t>(nf));
  for (int j = 0; j < nf; ++j)
    fb[static_cast<std::size_t>(j)] = {A->gen(nb + j).name,
                                       A->gen(nb + j).degree, std::nullopt};
  auto M = DgModule::make(B, std::move(fb));
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j)
      M->set_diff(i, j,
                  mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                      j)]);
  res.xi.base = B;
  res.xi.mod = M;
  res.xi.xi = lambda;
  auto trep = res.xi.validate();
  if (!trep.pass) {
    res.notes.push_back("twist data invalid: " + trep.violations.front());
    return res;
  }
  res.rebuilt = sym_twisted(res.xi);
  if (res.rebuilt->size() != na) {
    res.notes.push_back("rebuilt symmetric algebra has wrong size");
    return res;
  }
  std::vector<int> idmap(static_cast<std::size_t>(na));
  for (int i = 0; i < na; ++i) idmap[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < na; ++i)
    if (!(transport(res.rebuilt->diff(i), A.get(), idmap) == A->diff(i))) {
      res.notes.push_back("rebuilt symmetric algebra differs at " +
                          A->gen(i).name);
      return res;
    }

  // Canonical identification: the fiber block of the two-form pairing
  // sends the dual of a base one-form to a combination of fiber
  // variables. Fall back to an ansatz search when the block does not
  // have base coefficients.
  auto Ld = dagger(cotangent_complex(B).mod, ctx);
  std::optional<DgMap> ident;
  {
    DgMap phi0 = two_form_pairing(model, omega2, ctx);
    std::vector<int> toBfull(static_cast<std::size_t>(na), -1);
    for (int i = 0; i < nb; ++i) toBfull[static_cast<std::size_t>(i)] = i;
    DgMap X(Ld, M, 0);
    bool base_coeffs = true;
    for (int j = 0; j < nb && base_coeffs; ++j)
      for (int i = 0; i < nf && base_coeffs; ++i) {
        const Poly& c = phi0.entry(nb + i, j);
        for (auto& [mono, cc] : c.terms())
          for (auto& [g, e] : mono.factors)
            if (g >= nb) base_coeffs = false;
        if (base_coeffs) X.set_entry(i, j, transport(c, B.get(), toBfull));
      }
    if (base_coeffs && X.validate().pass && is_quis(X, spec)) ident = X;
  }
  if (!ident) ident = find_quis_map(Ld, M, spec.max_polydeg, spec);
  if (!ident) {
    res.notes.push_back(
        "no identification of the fiber module with the dual cotangent "
        "complex found in the ansatz");
    return res;
  }
  res.ident = *ident;

  // Even d: strip the middle-degree quadratic part of the two-form by
  // the change of variables y -> y - q with d q equal to the obstruction.
  if (d % 2 == 0) {
    DgMap phi = two_form_pairing(model, omega2, ctx);
    std::vector<Poly> qs(static_cast<std::size_t>(na), A->zero());
    bool any = false;
    std::vector<Monomial> quad;
    for (auto& m : enumerate_monomials(A.get(), 2)) {
      if (m.polydeg() != 2) continue;
      bool ok = true;
      for (auto& [g, e] : m.factors)
        if (g < nb || 2 * A->gen(g).degree != -d) ok = false;
      if (ok) quad.push_back(m);
    }
    for (int g = nb; g < na; ++g) {
      if (A->gen(g).degree != -d) continue;
      Poly obs = middle_obstruction(model, phi, g, nb, d);
      if (obs.is_zero()) continue;
      any = true;
      if (quad.empty()) {
        res.notes.push_back(
            "middle-degree quadratic obstruction with no quadratic "
            "monomials available");
        return res;
      }
      LinSys sys;
      for (auto& m : quad) {
        sys.add_col();
        Poly q = Poly::monomial(A.get(), m, Rational(1));
        sys.add(0, 0, model->d(model->lift(q)));
      }
      sys.add_rhs(0, 0, obs);
      auto sol = sys.solve();
      if (!sol) {
        res.notes.push_back(
            "quadratic part of the two-form on d" + A->gen(g).name +
            " is not exact (needs [d, omega2] = 0)");
        return res;
      }
      for (std::size_t c = 0; c < quad.size(); ++c)
        if (!((*sol)[c] == Rational(0)))
          qs[static_cast<std::size_t>(g)].add_term(quad[c], (*sol)[c]);
    }
    if (any) {
      for (int sgn : {-1, 1}) {
        std::vector<Poly> imgs(static_cast<std::size_t>(na));
        for (int g = 0; g < na; ++g)
          imgs[static_cast<std::size_t>(g)] =
              A->var(g) + qs[static_cast<std::size_t>(g)] *
                              Rational(sgn);
        CdgaMorphism alpha(A.get(), A.get(), imgs);
        if (!alpha.validate().pass) continue;
        Poly corrected = push_form(model, alpha, omega2);
        DgMap phic = two_form_pairing(model, corrected, ctx);
        bool clean = true;
        for (int g = nb; g < na; ++g)
          if (A->gen(g).degree == -d &&
              !middle_obstruction(model, phic, g, nb, d).is_zero())
            clean = false;
        if (clean) {
          res.alpha = alpha;
          res.alpha_nontrivial = true;
          res.omega2 = corrected;
          break;
        }
      }
      if (!res.alpha_nontrivial) {
        res.notes.push_back(
            "no change of variables strips the middle-degree quadratic "
            "part");
        return res;
      }
    }
  }
  res.ok = true;
  return res;
}

PotentialResult extract_potential(const OmegaModelPtr& model,
                                  const CdgaPtr& B,
                                  const std::vector<Poly>& xi_fiber,
                                  const DeRhamElement& omega,
                                  const DualityContext& ctx,
                                  const OmegaSliceSpec& spec,
                                  const std::optional<DeRhamElement>& nu) {
  PotentialResult res;
  const CdgaPtr& A = model->base;
  int nb = B->size();
  int nf = model->base->size() - nb;
  if (static_cast<int>(xi_fiber.size()) != nf ||
      model->fiber_start != nb) {
    res.notes.push_back("twist values do not match the fiber designation");
    return res;
  }

  if (ctx.d == 1) {
    if (nu) {
      auto dnu = apply_d(*nu) + apply_D(*nu);
      if (!(dnu.value == omega.value)) {
        res.notes.push_back("transgression witness does not integrate to "
                            "the form");
        return res;
      }
    } else {
      auto pr = find_primitive(
          DeRhamElement::make(model, omega.value, 0, omega.max_wedge),
          spec);
      if (!pr.primitive) {
        res.notes.push_back(
            "total de Rham class of the form does not vanish on slices "
            "(d = 1 transgression hypothesis)");
        return res;
      }
    }
  }

  Poly w2 = omega.component(2);
  auto el2 = DeRhamElement::make(model, w2, 1, omega.max_wedge);
  std::vector<int> toA(static_cast<std::size_t>(nb));
  for (int i = 0; i < nb; ++i) toA[static_cast<std::size_t>(i)] = i;

  // The sign convention relating the presentation twist to the de Rham
  // twist field is pinned by the postcondition, which is checked for
  // both candidates.
  for (int sgn : {1, -1}) {
    std::vector<Poly> vals(static_cast<std::size_t>(nf));
    for (int j = 0; j < nf; ++j)
      vals[static_cast<std::size_t>(j)] =
          transport(xi_fiber[static_cast<std::size_t>(j)], A.get(), toA) *
          Rational(sgn);
    VectorField xi = twist_field(model, vals);
    auto e = exp_xi(xi, el2);
    Poly kept(model->forms.get());
    for (auto& [m, c] : e.value.terms())
      if (model->wedge_degree(m) >= 1) kept.add_term(m, c);
    e = DeRhamElement::make(model, kept, 1, omega.max_wedge);

    auto parts = weight_decompose(e);
    DeRhamElement w0 = DeRhamElement::make(
        model, parts.count(0) ? parts[0].value : model->forms->zero(), 1,
        omega.max_wedge);
    bool base_only = true;
    for (auto& [m, c] : w0.value.terms())
      for (auto& [g, ee] : m.factors)
        if (model->is_fiber(g)) base_only = false;
    if (!base_only) continue;

    // Transport the weight-0 piece down to the base forms.
    auto mB = make_omega(B);
    std::vector<int> down(2 * static_cast<std::size_t>(A->size()), -1);
    for (int i = 0; i < nb; ++i) {
      down[static_cast<std::size_t>(i)] = i;
      down[static_cast<std::size_t>(A->size() + i)] = nb + i;
    }
    Poly gammaB = transport(w0.value, mB->forms.get(), down);
    auto pr = find_primitive(
        DeRhamElement::make(mB, gammaB, 0, omega.max_wedge), spec);
    if (!pr.primitive) continue;
    Poly f0 = pr.primitive->component(0);
    std::vector<int> zonly(2 * static_cast<std::size_t>(nb), -1);
    for (int i = 0; i < nb; ++i) zonly[static_cast<std::size_t>(i)] = i;
    Poly f = transport(f0, B.get(), zonly);

    // Postcondition: e^xi omega - pi^*(d f) is exact in wedge degrees
    // >= 1 within the truncation.
    Poly dfB = mB->d(mB->lift(f));
    Poly dfA = transport_forms(mB, model, toA, dfB);
    auto delta = e - DeRhamElement::make(model, dfA, 1, omega.max_wedge);
    bool good = delta.is_zero();
    if (!good) {
      auto dpr = find_primitive(delta, spec);
      good = dpr.primitive.has_value();
    }
    if (!good) continue;
    res.ok = true;
    res.f = f;
    if (sgn < 0)
      res.notes.push_back("twist field calibrated with the opposite sign");
    return res;
  }
  res.notes.push_back(
      "no twist-field calibration integrates the contracted form over "
      "the base");
  return res;
}

DarbouxResult moser_identify(const CdgaPtr& A, const OmegaModelPtr& model,
                             const DeRhamElement& omega, const CdgaPtr& B,
                             const Poly& f, const DualityContext& ctx,
                             const SliceSpec& spec,
                             const OmegaSliceSpec& ospec) {
  DarbouxResult res;
  res.B = B;
  res.f = f;
  res.sigma = CdgaMorphism::identity(A.get());
  try {
    res.normal = twisted_standard_form(B, ctx, f);
  } catch (const std::invalid_argument& e) {
    res.notes.push_back(std::string("standard model: ") + e.what());
    return res;
  }
  const CdgaPtr& Ap = res.normal.total;
  int nb = B->size(), na = A->size();
  if (Ap->size() != na) {
    res.notes.push_back("standard model and algebra have different sizes");
    return res;
  }

  Poly w2 = omega.component(2);
  DgMap phi = two_form_pairing(model, w2, ctx);
  if (!phi.validate().pass) {
    res.notes.push_back("two-form pairing is not a chain map");
    return res;
  }

  // sigma on the fiber: the block of the pairing from base columns to
  // fiber rows, tried in both sign conventions; validation and the final
  // pullback identity arbitrate.
  std::optional<CdgaMorphism> sigma;
  for (int sgn : {1, -1}) {
    std::vector<Poly> imgs(static_cast<std::size_t>(na));
    for (int i = 0; i < nb; ++i)
      imgs[static_cast<std::size_t>(i)] = A->var(i);
    bool shaped = true;
    for (int i = 0; i < nb && shaped; ++i) {
      int fg = res.normal.fiber_of[static_cast<std::size_t>(i)];
      Poly img(A.get());
      for (int b = nb; b < na; ++b) {
        const Poly& e = phi.entry(b, i);
        if (e.is_zero()) continue;
        for (auto& [m, c] : e.terms())
          for (auto& [g, ee] : m.factors)
            if (g >= nb) shaped = false;
        img += e * A->var(b) * Rational(sgn);
      }
      if (img.is_zero()) shaped = false;
      imgs[static_cast<std::size_t>(fg)] = img;
    }
    if (!shaped) continue;
    CdgaMorphism cand(Ap.get(), A.get(), imgs);
    if (cand.validate().pass) {
      sigma = cand;
      break;
    }
  }
  if (!sigma) {
    res.notes.push_back(
        "no chain morphism from the standard model matches the pairing "
        "block");
    return res;
  }
  res.sigma = *sigma;

  // Relative cotangent complex of sigma vanishes on slices.
  auto cotA = cotangent_complex(A);
  auto LpA = base_change(cotangent_complex(Ap).mod, *sigma, A);
  DgMap dsig(LpA, cotA.mod, 0);
  for (int j = 0; j < na; ++j) {
    auto de = cotA.d_of((*sigma)(Poly::generator(Ap.get(), j)));
    for (int i = 0; i < na; ++i) dsig.set_entry(i, j, de.coef[i]);
  }
  res.relative_zero = dsig.validate().pass && is_quis(dsig, spec);

  res.h0_surjective = true;
  for (int g = 0; g < na; ++g)
    if (A->gen(g).degree == 0 && g >= nb) res.h0_surjective = false;

  // Pullback identity: the pushforward of the standard form along sigma
  // agrees with omega as a truncated de Rham class.
  Poly pushed =
      push_form_across(res.normal.model, model, *sigma,
                       res.normal.omega.value);
  Poly deltap = pushed - omega.value;
  if (deltap.is_zero()) {
    res.delta_zero = true;
  } else {
    auto dpr = find_primitive(
        DeRhamElement::make(model, deltap, omega.p_floor, omega.max_wedge),
        ospec);
    res.delta_zero = dpr.primitive.has_value();
  }
  if (!res.relative_zero)
    res.notes.push_back("relative cotangent complex of sigma is nonzero");
  if (!res.h0_surjective)
    res.notes.push_back("H^0 surjectivity fails: degree-0 generators "
                        "outside the base");
  if (!res.delta_zero)
    res.notes.push_back("pushforward of the standard form differs from "
                        "the given form");
  res.ok = res.relative_zero && res.h0_surjective && res.delta_zero;
  return res;
}

DarbouxResult darboux_pipeline(const CdgaPtr& A, const OmegaModelPtr& model,
                               const DeRhamElement& omega,
                               const SurgeryWitness& witness,
                               const DualityContext& ctx,
                               const SliceSpec& spec,
                               const OmegaSliceSpec& ospec) {
  DarbouxResult res;
  auto vs = verify_symplectic(model, omega, ctx, spec);
  if (!vs.pass()) {
    res.notes.push_back("form is not symplectic (closed=" +
                        std::to_string(vs.closed) + " nondeg=" +
                        std::to_string(vs.nondegenerate) + " sym=" +
                        std::to_string(vs.symmetric) + ")");
    return res;
  }

  // Split off the middle-degree quadratic factor of the pairing.
  CdgaPtr Ar = A;
  OmegaModelPtr mr = model;
  DeRhamElement om = omega;
  std::vector<int> gen_remap(static_cast<std::size_t>(A->size()));
  for (int g = 0; g < A->size(); ++g)
    gen_remap[static_cast<std::size_t>(g)] = g;
  DgMap phi = two_form_pairing(model, omega.component(2), ctx);
  SymmetricComplex sym{phi.dst(), phi, ctx};
  auto split = split_off_quadratic(sym, spec);
  res.quadratic_flagged = split.flagged;
  for (auto& n : split.notes) res.notes.push_back(n);
  if (split.middle) {
    res.quadratic = split.middle;
    // Drop the middle generators when they are presentation-separable.
    std::vector<bool> drop(static_cast<std::size_t>(A->size()), false);
    for (int i = 0; i < split.middle->mod->rank(); ++i) {
      // Cotangent basis elements are named d<generator>.
      const std::string& bn = split.middle->mod->basis(i).name;
      int g = bn.size() > 1 && bn[0] == 'd' ? A->find(bn.substr(1)) : -1;
      if (g < 0) {
        res.notes.push_back("middle factor does not match generators; "
                            "continuing without splitting");
        res.quadratic.reset();
        break;
      }
      drop[static_cast<std::size_t>(g)] = true;
    }
    if (res.quadratic) {
      bool separable = true;
      for (int g = 0; g < A->size() && separable; ++g) {
        if (drop[static_cast<std::size_t>(g)]) {
          if (!A->diff(g).is_zero()) separable = false;
          continue;
        }
        for (auto& [m, c] : A->diff(g).terms())
          for (auto& [gg, e] : m.factors)
            if (drop[static_cast<std::size_t>(gg)]) separable = false;
      }
      if (!separable) {
        res.notes.push_back("middle factor is not presentation-separable; "
                            "continuing without splitting");
        res.quadratic.reset();
      } else {
        auto Anew = Cdga::make();
        std::vector<int> remap(static_cast<std::size_t>(A->size()), -1);
        for (int g = 0; g < A->size(); ++g) {
          if (drop[static_cast<std::size_t>(g)]) continue;
          remap[static_cast<std::size_t>(g)] = Anew->add_generator(
              A->gen(g).name, A->gen(g).degree, A->gen(g).weight);
        }
        for (int g = 0; g < A->size(); ++g)
          if (!drop[static_cast<std::size_t>(g)])
            Anew->set_diff(remap[static_cast<std::size_t>(g)],
                           transport(A->diff(g), Anew.get(), remap));
        int fs = 0;
        for (int g = 0; g < model->fiber_start; ++g)
          if (!drop[static_cast<std::size_t>(g)]) ++fs;
        Ar = Anew;
        gen_remap = remap;
        mr = make_omega(Ar, fs);
        std::vector<int> fmap(2 * static_cast<std::size_t>(A->size()), -1);
        for (int g = 0; g < A->size(); ++g) {
          if (drop[static_cast<std::size_t>(g)]) continue;
          fmap[static_cast<std::size_t>(g)] =
              remap[static_cast<std::size_t>(g)];
          fmap[static_cast<std::size_t>(A->size() + g)] =
              Ar->size() + remap[static_cast<std::size_t>(g)];
        }
        Poly kept(model->forms.get());
        for (auto& [m, c] : omega.value.terms()) {
          bool uses_drop = false;
          for (auto& [g, e] : m.factors)
            if (drop[static_cast<std::size_t>(model->gen_of(g))])
              uses_drop = true;
          if (!uses_drop) kept.add_term(m, c);
        }
        om = DeRhamElement::make(mr, transport(kept, mr->forms.get(), fmap),
                                 omega.p_floor, omega.max_wedge);
      }
    }
  }

  // Destabilize the witness when a stabilizer is attached.
  DgMap phir = two_form_pairing(mr, om.component(2), ctx);
  SymmetricComplex symr{phir.dst(), phir, ctx};
  LagrangianData lag = witness.lag;
  if (Ar != A) {
    // The witness was given over the metabolic factor of the original
    // pairing; re-anchor it over the reduced algebra by matching basis
    // names and re-solving the certificates.
    if (witness.stabilizer.mod && witness.stabilizer.mod->rank() > 0) {
      res.notes.push_back(
          "stabilized witness combined with a quadratic split is not "
          "supported");
      return res;
    }
    auto uses_dropped = [&](const Poly& p) {
      for (auto& [m, c] : p.terms())
        for (auto& [g, e] : m.factors)
          if (gen_remap[static_cast<std::size_t>(g)] < 0) return true;
      return false;
    };
    const DgModulePtr& src = lag.sub;
    const DgModulePtr& dstm = lag.incl.dst();
    bool transferable = true;
    std::vector<BasisElement> bs;
    for (int i = 0; i < src->rank(); ++i) bs.push_back(src->basis(i));
    auto sub2 = DgModule::make(Ar, std::move(bs));
    for (int i = 0; i < src->rank() && transferable; ++i)
      for (int j = 0; j < src->rank() && transferable; ++j) {
        if (uses_dropped(src->diff(i, j))) {
          transferable = false;
          break;
        }
        sub2->set_diff(i, j, transport(src->diff(i, j), Ar.get(), gen_remap));
      }
    DgMap incl2(sub2, phir.dst(), 0);
    for (int j = 0; j < src->rank() && transferable; ++j)
      for (int i = 0; i < dstm->rank() && transferable; ++i) {
        const Poly& e = lag.incl.entry(i, j);
        if (e.is_zero()) continue;
        int row = phir.dst()->find(dstm->basis(i).name);
        if (row < 0 || uses_dropped(e)) {
          transferable = false;
          break;
        }
        incl2.set_entry(row, j, transport(e, Ar.get(), gen_remap));
      }
    std::optional<LagrangianData> relag;
    if (transferable) relag = complete_lagrangian(symr, sub2, incl2, spec);
    if (!relag) {
      res.notes.push_back(
          "witness Lagrangian does not transfer to the reduced algebra");
      return res;
    }
    lag = *relag;
  }
  if (witness.stabilizer.mod && witness.stabilizer.mod->rank() > 0) {
    auto sres = surgery_to_lagrangian(symr, witness, spec);
    for (auto& n : sres.notes) res.notes.push_back(n);
    lag = sres.lag;
  }

  auto fb = choose_base_from_lagrangian(Ar, mr, om, lag, ctx, spec);
  for (auto& n : fb.notes) res.notes.push_back(n);
  if (!fb.ok) return res;

  // The integrated base must be a literal generator prefix of the
  // algebra for the normalization step.
  std::vector<bool> hit(static_cast<std::size_t>(Ar->size()), false);
  bool prefix_ok = true;
  for (int j = 0; j < fb.B->size() && prefix_ok; ++j) {
    const Poly& img = fb.to_A.image(j);
    if (img.terms().size() != 1) {
      prefix_ok = false;
      break;
    }
    auto& [m, c] = *img.terms().begin();
    if (m.polydeg() != 1 || !(c == Rational(1) || c == Rational(-1))) {
      prefix_ok = false;
      break;
    }
    int g = m.factors[0].first;
    if (hit[static_cast<std::size_t>(g)]) prefix_ok = false;
    hit[static_cast<std::size_t>(g)] = true;
  }
  if (prefix_ok)
    for (int g = 0; g < fb.B->size(); ++g)
      if (!hit[static_cast<std::size_t>(g)]) prefix_ok = false;
  if (!prefix_ok) {
    res.notes.push_back(
        "integrated base is not a generator prefix of the algebra; "
        "normalization not attempted");
    return res;
  }
  auto Bp = Cdga::make();
  std::vector<int> pmap(static_cast<std::size_t>(fb.B->size()));
  for (int g = 0; g < fb.B->size(); ++g) {
    pmap[static_cast<std::size_t>(g)] =
        Bp->add_generator(Ar->gen(g).name, Ar->gen(g).degree);
  }
  for (int g = 0; g < fb.B->size(); ++g)
    Bp->set_diff(g, transport(Ar->diff(g), Bp.get(), pmap));

  auto norm = normalize_presentation(Bp, Ar, mr, om.component(2), ctx,
                                     spec);
  for (auto& n : norm.notes) res.notes.push_back(n);
  if (!norm.ok) return res;

  DeRhamElement omc = om;
  if (norm.alpha_nontrivial)
    omc = DeRhamElement::make(mr, push_form(mr, norm.alpha, om.value),
                              om.p_floor, om.max_wedge);

  auto pot = extract_potential(mr, Bp, norm.xi.xi, omc, ctx, ospec);
  for (auto& n : pot.notes) res.notes.push_back(n);
  if (!pot.ok) return res;

  auto mos = moser_identify(Ar, mr, omc, Bp, pot.f, ctx, spec, ospec);
  for (auto& n : mos.notes) res.notes.push_back(n);
  res.B = mos.B;
  res.f = mos.f;
  res.normal = mos.normal;
  res.sigma = mos.sigma;
  res.relative_zero = mos.relative_zero;
  res.h0_surjective = mos.h0_surjective;
  res.delta_zero = mos.delta_zero;
  res.ok = mos.ok;

  // Undo the quadratic-stripping change of variables so sigma lands on
  // the original form: alpha fixes the middle-degree variables entering
  // its corrections, so its inverse is y -> 2y - alpha(y).
  if (res.ok && norm.alpha_nontrivial) {
    std::vector<Poly> inv(static_cast<std::size_t>(Ar->size()));
    for (int g = 0; g < Ar->size(); ++g)
      inv[static_cast<std::size_t>(g)] =
          Ar->var(g) * Rational(2) - norm.alpha(Poly::generator(Ar.get(), g));
    CdgaMorphism alpha_inv(Ar.get(), Ar.get(), inv);
    if (alpha_inv.validate().pass) {
      std::vector<Poly> comp(
          static_cast<std::size_t>(res.normal.total->size()));
      for (int g = 0; g < res.normal.total->size(); ++g)
        comp[static_cast<std::size_t>(g)] = alpha_inv(
            res.sigma(Poly::generator(res.normal.total.get(), g)));
      res.sigma =
          CdgaMorphism(res.normal.total.get(), Ar.get(), comp);
    } else {
      res.notes.push_back("quadratic correction is not invertible; sigma "
                          "identifies the corrected form");
    }
  }
  return res;
}

}  // namespace dgsw
