#include "dgsw/witt.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace dgsw {

namespace {

bool entry_degrees_ok(const DgMap& f) {
  for (int i = 0; i < f.dst()->rank(); ++i)
    for (int j = 0; j < f.src()->rank(); ++j) {
      const Poly& e = f.entry(i, j);
      if (e.is_zero()) continue;
      auto deg = e.degree();
      int want = f.src()->basis(j).degree + f.shift() - f.dst()->basis(i).degree;
      if (!deg || *deg != want) return false;
    }
  return true;
}

bool is_zero_map(const DgMap& f) {
  for (int i = 0; i < f.dst()->rank(); ++i)
    for (int j = 0; j < f.src()->rank(); ++j)
      if (!f.entry(i, j).is_zero()) return false;
  return true;
}

// Submodule on a coupling-closed subset of basis indices.
DgModulePtr submodule(const DgModulePtr& m, const std::vector<int>& idx) {
  std::vector<BasisElement> basis;
  for (int i : idx) basis.push_back(m->basis(i));
  auto out = DgModule::make(m->base(), std::move(basis));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      out->set_diff(static_cast<int>(a), static_cast<int>(b),
                    m->diff(idx[a], idx[b]));
  return out;
}

SymmetricComplex sub_symmetric(const SymmetricComplex& s,
                               const std::vector<int>& idx) {
  SymmetricComplex out;
  out.ctx = s.ctx;
  out.mod = submodule(s.mod, idx);
  auto dag = dagger(out.mod, s.ctx);
  out.phi = DgMap(dag, out.mod, 0);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      out.phi.set_entry(static_cast<int>(a), static_cast<int>(b),
                        s.phi.entry(idx[a], idx[b]));
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool has_isotropic_half(const SymmetricComplex& s, const std::vector<int>& comp) {
  int n = static_cast<int>(comp.size());
  if (n % 2 != 0) return false;
  int half = n / 2;
  // Enumerate subsets of size n/2; components are small.
  std::vector<int> pick;
  std::function<bool(int)> rec = [&](int start) -> bool {
    if (static_cast<int>(pick.size()) == half) {
      for (int a : pick)
        for (int b : pick)
          if (!s.phi.entry(comp[a], comp[b]).is_zero()) return false;
      return true;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

SymmetricReport check_symmetric(const SymmetricComplex& s,
                                const SliceSpec& spec) {
  SymmetricReport rep;
  if (!s.mod || s.phi.shift() != 0 || s.phi.dst() != s.mod ||
      s.phi.src()->rank() != s.mod->rank())
    return rep;
  rep.chain = s.phi.validate().pass;
  if (!rep.chain) return rep;
  rep.quis = is_quis(s.phi, spec);
  DgMap lhs = dagger_map(s.phi, s.ctx);
  DgMap rhs = double_dual_map(s.phi.dst(), s.ctx)
                  .compose(s.phi)
                  .scale(Rational(s.ctx.lambdaP));
  rep.symmetric = lhs.entries_equal(rhs);
  return rep;
}

SymmetricComplex hyperbolic(const DgModulePtr& N, const DualityContext& ctx) {
  auto Nd = dagger(N, ctx);
  int rn = N->rank();
  std::vector<BasisElement> basis;
  for (int i = 0; i < rn; ++i) basis.push_back(N->basis(i));
  for (int i = 0; i < rn; ++i) basis.push_back(Nd->basis(i));
  auto M = DgModule::make(N->base(), std::move(basis));
  for (int i = 0; i < rn; ++i)
    for (int j = 0; j < rn; ++j) {
      M->set_diff(i, j, N->diff(i, j));
      M->set_diff(rn + i, rn + j, Nd->diff(i, j));
    }
  auto Md = dagger(M, ctx);

  for (int gs : {1, -1}) {
    SymmetricComplex s;
    s.mod = M;
    s.ctx = ctx;
    s.phi = DgMap(Md, M, 0);
    for (int i = 0; i < rn; ++i) {
      s.phi.set_entry(rn + i, i, M->alg()->one());
      int expo = N->basis(i).degree * (ctx.d + 1);
      int sign = ((expo & 1) ? -1 : 1) * gs;
      s.phi.set_entry(i, rn + i, M->alg()->constant(sign));
    }
    if (!s.phi.validate().pass) continue;
    DgMap lhs = dagger_map(s.phi, ctx);
    DgMap rhs = double_dual_map(M, ctx).compose(s.phi).scale(
        Rational(ctx.lambdaP));
    if (lhs.entries_equal(rhs)) return s;
  }
  throw std::logic_error("hyperbolic: no sign choice yields a symmetric form");
}

SymmetricComplex direct_sum(const SymmetricComplex& x,
                            const SymmetricComplex& y) {
  if (x.mod->base() != y.mod->base())
    throw std::invalid_argument("direct_sum: different base algebras");
  if (x.ctx.d != y.ctx.d || x.ctx.lambdaP != y.ctx.lambdaP)
    throw std::invalid_argument("direct_sum: different duality contexts");
  int rx = x.mod->rank(), ry = y.mod->rank();
  std::vector<BasisElement> basis;
  for (int i = 0; i < rx; ++i) basis.push_back(x.mod->basis(i));
  for (int i = 0; i < ry; ++i) basis.push_back(y.mod->basis(i));
  auto M = DgModule::make(x.mod->base(), std::move(basis));
  for (int i = 0; i < rx; ++i)
    for (int j = 0; j < rx; ++j) M->set_diff(i, j, x.mod->diff(i, j));
  for (int i = 0; i < ry; ++i)
    for (int j = 0; j < ry; ++j)
      M->set_diff(rx + i, rx + j, y.mod->diff(i, j));
  SymmetricComplex s;
  s.mod = M;
  s.ctx = x.ctx;
  s.phi = DgMap(dagger(M, x.ctx), M, 0);
  for (int i = 0; i < rx; ++i)
    for (int j = 0; j < rx; ++j) s.phi.set_entry(i, j, x.phi.entry(i, j));
  for (int i = 0; i < ry; ++i)
    for (int j = 0; j < ry; ++j)
      s.phi.set_entry(rx + i, rx + j, y.phi.entry(i, j));
  return s;
}

LagrangianReport check_lagrangian(const SymmetricComplex& s,
                                  const LagrangianData& L,
                                  const SliceSpec& spec) {
  LagrangianReport rep;
  if (!L.sub || L.incl.shift() != 0 || L.to_dual.shift() != 0 ||
      L.isotropy_h.shift() != -1 || L.duality_h.shift() != -1)
    return rep;
  if (L.incl.src()->rank() != L.sub->rank() ||
      L.incl.dst()->rank() != s.mod->rank() ||
      L.to_dual.src()->rank() != s.mod->rank() ||
      L.to_dual.dst()->rank() != L.sub->rank())
    return rep;
  rep.maps = L.incl.validate().pass && L.to_dual.validate().pass &&
             entry_degrees_ok(L.isotropy_h) && entry_degrees_ok(L.duality_h);
  if (!rep.maps) return rep;

  rep.isotropy = is_zero_map(L.to_dual.compose(L.incl) -
                             d_commutator(L.isotropy_h));

  DgMap adj = L.to_dual.compose(s.phi) -
              dagger_map(L.incl, s.ctx).scale(Rational(L.dual_sign));
  rep.duality = is_zero_map(adj - d_commutator(L.duality_h));

  auto k = triangle_map(s, L);
  rep.exact = k && is_quis(*k, spec);
  return rep;
}

std::optional<DgMap> triangle_map(const SymmetricComplex& s,
                                  const LagrangianData& L) {
  // The induced map cone(incl) -> N-dagger: b on the M block, +-h on the
  // shifted N block (the sign matches the cone convention).
  auto C = cone(L.incl);
  int rn = L.sub->rank();
  for (int hs : {1, -1}) {
    DgMap k(C.cone, L.to_dual.dst(), 0);
    for (int i = 0; i < L.to_dual.dst()->rank(); ++i) {
      for (int j = 0; j < rn; ++j)
        k.set_entry(i, j, L.isotropy_h.entry(i, j) * Rational(hs));
      for (int j = 0; j < s.mod->rank(); ++j)
        k.set_entry(i, rn + j, L.to_dual.entry(i, j));
    }
    if (k.validate().pass) return k;
  }
  return std::nullopt;
}

std::optional<LagrangianData> complete_lagrangian(const SymmetricComplex& s,
                                                  const DgModulePtr& sub,
                                                  const DgMap& incl,
                                                  const SliceSpec& spec) {
  if (incl.shift() != 0 || incl.src()->rank() != sub->rank() ||
      incl.dst()->rank() != s.mod->rank() || !incl.validate().pass)
    return std::nullopt;
  auto adag = dagger_map(incl, s.ctx);  // M-dagger -> N-dagger
  for (int sgn : {1, -1}) {
    auto fx = solve_factor_through(s.phi, adag.scale(Rational(sgn)),
                                   spec.max_polydeg);
    if (!fx) continue;
    LagrangianData L;
    L.sub = sub;
    L.incl = incl;
    L.to_dual = fx->first;
    L.duality_h = fx->second;
    L.dual_sign = sgn;
    auto h = solve_homotopy(L.to_dual.compose(incl), spec.max_polydeg);
    if (!h) continue;
    L.isotropy_h = *h;
    if (check_lagrangian(s, L, spec).pass()) return L;
  }
  return std::nullopt;
}

LagrangianData surgery_step(const SymmetricComplex& s, const LagrangianData& L,
                            const DgModulePtr& R, const DgMap& r,
                            int max_polydeg) {
  if (r.src() != R || r.dst()->rank() != L.sub->rank() || r.shift() != 0)
    throw std::invalid_argument("surgery_step: r must be a shift-0 map "
                                "R -> dual of the Lagrangian");
  // Lift the classes through the exactness triangle: the shifted-N
  // component of the lift is the attaching map of new cells on N, and the
  // M component tells where the cells go in M.
  auto k = triangle_map(s, L);
  if (!k)
    throw std::runtime_error(
        "surgery_step: the exactness triangle map does not validate");
  auto lift = solve_lift_through(*k, r, max_polydeg);
  if (!lift)
    throw std::runtime_error(
        "surgery_step: classes do not lift through the exactness triangle "
        "in the polynomial-degree ansatz");
  const DgMap& X = lift->first;  // R -> cone(incl)
  int rn = L.sub->rank();
  int rr = R->rank();

  for (int taud : {1, 0}) {
    // Attach one cell per class: D(cell_t) is the shifted-N component of
    // the lift, un-shifted with the row-parity sign pattern.
    std::vector<BasisElement> basis;
    for (int i = 0; i < rn; ++i) basis.push_back(L.sub->basis(i));
    for (int t = 0; t < rr; ++t) basis.push_back(R->basis(t));
    auto Sp = DgModule::make(L.sub->base(), std::move(basis));
    for (int i = 0; i < rn; ++i)
      for (int j = 0; j < rn; ++j) Sp->set_diff(i, j, L.sub->diff(i, j));
    for (int t = 0; t < rr; ++t)
      for (int i = 0; i < rn; ++i) {
        Poly e = X.entry(i, t);
        if (taud && (L.sub->basis(i).degree & 1)) e = -e;
        Sp->set_diff(i, rn + t, e);
      }
    // The sign pattern must square to zero.
    bool ok = true;
    for (int t = 0; t < rr && ok; ++t) {
      std::vector<Poly> e(Sp->rank(), Poly(Sp->alg()));
      e[rn + t] = Sp->alg()->one();
      auto dd = Sp->d(Sp->d(e));
      for (auto& p : dd)
        if (!p.is_zero()) ok = false;
    }
    if (!ok) continue;

    // Extend the inclusion: start from the old one on the N block and
    // repair the chain defect on the cell columns by an exact solve.
    DgMap a0(Sp, s.mod, 0);
    for (int i = 0; i < s.mod->rank(); ++i)
      for (int j = 0; j < rn; ++j) a0.set_entry(i, j, L.incl.entry(i, j));
    auto fix = solve_homotopy(d_commutator(a0).scale(Rational(-1)),
                              max_polydeg);
    if (!fix) continue;
    DgMap a = a0 + *fix;
    if (!a.validate().pass) continue;

    LagrangianData out;
    out.sub = Sp;
    out.incl = a;

    std::optional<std::pair<DgMap, DgMap>> fac;
    for (int sgn : {L.dual_sign, -L.dual_sign}) {
      DgMap t = dagger_map(a, s.ctx).scale(Rational(sgn));
      fac = solve_factor_through(s.phi, t, max_polydeg);
      if (fac) {
        out.dual_sign = sgn;
        break;
      }
    }
    if (!fac) continue;
    out.to_dual = fac->first;
    out.duality_h = fac->second;

    auto h = solve_homotopy(out.to_dual.compose(out.incl), max_polydeg);
    if (!h) continue;
    out.isotropy_h = *h;
    return out;
  }
  throw std::runtime_error(
      "surgery_step: no certificate set for the attached cells in the "
      "polynomial-degree ansatz");
}

SurgeryResult surgery_to_lagrangian(const SymmetricComplex& m,
                                    const SurgeryWitness& witness,
                                    const SliceSpec& spec) {
  SurgeryResult res;
  int rstab = witness.stabilizer.mod ? witness.stabilizer.mod->rank() : 0;

  LagrangianData L;
  if (rstab == 0) {
    if (!check_lagrangian(m, witness.lag, spec).pass())
      throw std::invalid_argument(
          "surgery_to_lagrangian: witness Lagrangian fails validation");
    L = witness.lag;
  } else {
    if (!check_symmetric(witness.stabilizer, spec).pass())
      throw std::invalid_argument(
          "surgery_to_lagrangian: stabilizer is not a symmetric complex");
    auto big = direct_sum(witness.stabilizer, m);
    if (!check_lagrangian(big, witness.lag, spec).pass())
      throw std::invalid_argument(
          "surgery_to_lagrangian: witness Lagrangian fails validation");

    // Destabilize: the stabilizer must be hyperbolic-shaped N0 + N0-dagger.
    // The component c0 of the inclusion into the dual half of the
    // stabilizer is a chain map; attaching cells along it (cone(c0)[-1])
    // kills the stabilizer directions, and the restriction of the witness
    // maps to the M block gives a candidate Lagrangian for M. The new
    // homotopy certificates are found by an exact linear solve, since the
    // transported ones mix with the discarded stabilizer block.
    if (rstab % 2 != 0)
      throw std::invalid_argument(
          "surgery_to_lagrangian: stabilizer must be hyperbolic-shaped");
    int rn0 = rstab / 2;
    const auto& lag = witness.lag;
    auto sub = lag.sub;

    // The attaching target is the source half of the stabilizer cone:
    // for a hyperbolic-shaped stabilizer N0 + N0-dagger that is the first
    // block, and the projection onto it is a chain map.
    std::vector<int> sidx(rn0);
    for (int i = 0; i < rn0; ++i) sidx[i] = i;
    auto N0s = submodule(big.mod, sidx);
    DgMap c0(sub, N0s, 0);
    for (int i = 0; i < rn0; ++i)
      for (int j = 0; j < sub->rank(); ++j)
        c0.set_entry(i, j, lag.incl.entry(i, j));
    if (!c0.validate().pass)
      throw std::logic_error(
          "surgery_to_lagrangian: stabilizer component is not a chain map");
    auto C = cone(c0);
    auto Lt = shift(C.cone, -1);
    DgMap p(Lt, sub, 0);
    for (int i = 0; i < sub->rank(); ++i)
      p.set_entry(i, i, sub->alg()->one());
    if (!p.validate().pass)
      throw std::logic_error(
          "surgery_to_lagrangian: destabilization projection fails");
    DgMap pd = dagger_map(p, m.ctx);

    // Restrict the inclusion and projection to the M block.
    int rm = m.mod->rank();
    DgMap aM(sub, m.mod, 0);
    for (int i = 0; i < rm; ++i)
      for (int j = 0; j < sub->rank(); ++j)
        aM.set_entry(i, j, lag.incl.entry(rstab + i, j));
    DgMap injM(m.mod, big.mod, 0);
    for (int i = 0; i < rm; ++i)
      injM.set_entry(rstab + i, i, m.mod->alg()->one());

    L.sub = Lt;
    L.incl = aM.compose(p);
    L.to_dual = pd.compose(lag.to_dual.compose(injM));
    L.dual_sign = lag.dual_sign;
    if (!L.incl.validate().pass || !L.to_dual.validate().pass) {
      res.notes.push_back("destabilized maps are not chain maps");
      res.lag = L;
      return res;
    }

    auto h = solve_homotopy(L.to_dual.compose(L.incl), spec.max_polydeg);
    if (!h) {
      res.notes.push_back(
          "no isotropy homotopy for the destabilized Lagrangian in the "
          "polynomial-degree ansatz");
      res.lag = L;
      return res;
    }
    L.isotropy_h = *h;

    std::optional<DgMap> H;
    for (int sgn : {L.dual_sign, -L.dual_sign}) {
      DgMap delta = L.to_dual.compose(m.phi) -
                    dagger_map(L.incl, m.ctx).scale(Rational(sgn));
      H = solve_homotopy(delta, spec.max_polydeg);
      if (H) {
        L.dual_sign = sgn;
        break;
      }
    }
    if (!H) {
      res.notes.push_back(
          "no duality homotopy for the destabilized Lagrangian in the "
          "polynomial-degree ansatz");
      res.lag = L;
      return res;
    }
    L.duality_h = *H;

    if (!check_lagrangian(m, L, spec).pass()) {
      res.notes.push_back("destabilized Lagrangian failed validation");
      res.lag = L;
      return res;
    }
  }

  // Iterated surgery: kill the top cohomology of the dual of the
  // Lagrangian while it violates the connectivity bound. Each step must
  // validate and strictly shrink the total cohomology of the dual, or the
  // loop stops with the best Lagrangian found and an honest note.
  int bound = -((m.ctx.d - 1) / 2);
  auto mass = [&](const DgModulePtr& mod) {
    int total = 0;
    for (auto& e : cohomology(mod, spec).entries) total += e.dim;
    return total;
  };
  for (int iter = 0; iter < 16; ++iter) {
    auto Nd = dagger(L.sub, m.ctx);
    auto coh = cohomology(Nd, spec);
    int top = spec.deg_min - 1;
    int old_mass = 0;
    for (auto& e : coh.entries) {
      old_mass += e.dim;
      if (e.dim > 0 && e.degree >= bound && e.degree > top) top = e.degree;
    }
    if (top < bound) {
      res.normalized = true;
      break;
    }
    std::vector<ModElement> reps;
    for (auto& e : coh.entries)
      if (e.degree == top)
        for (auto& rep : e.representatives) reps.push_back(rep);
    if (reps.empty()) {
      res.notes.push_back("no representatives available at degree " +
                          std::to_string(top));
      break;
    }
    std::vector<BasisElement> rb;
    for (std::size_t t = 0; t < reps.size(); ++t)
      rb.push_back({"srg" + std::to_string(iter) + "_" + std::to_string(t),
                    top, std::nullopt});
    auto R = DgModule::make(L.sub->base(), std::move(rb));
    DgMap r(R, Nd, 0);
    for (std::size_t t = 0; t < reps.size(); ++t)
      for (int i = 0; i < Nd->rank(); ++i)
        r.set_entry(i, static_cast<int>(t), reps[t].coef[i]);
    if (!r.validate().pass) {
      res.notes.push_back(
          "surgery classes at degree " + std::to_string(top) +
          " are not exactly closed (approximate slice); stopping");
      break;
    }
    LagrangianData next;
    try {
      next = surgery_step(m, L, R, r, spec.max_polydeg);
    } catch (const std::runtime_error& e) {
      res.notes.push_back(e.what());
      break;
    }
    if (mass(dagger(next.sub, m.ctx)) >= old_mass) {
      res.notes.push_back(
          "surgery at degree " + std::to_string(top) +
          " does not shrink the dual cohomology (the classes lift to the "
          "ambient complex); stopping");
      break;
    }
    if (!check_lagrangian(m, next, spec).pass()) {
      res.notes.push_back("surgery at degree " + std::to_string(top) +
                          " does not preserve the Lagrangian triangle; "
                          "stopping");
      break;
    }
    L = next;
    ++res.iterations;
  }
  res.lag = L;
  return res;
}

QuadraticSplit split_off_quadratic(const SymmetricComplex& s,
                                   const SliceSpec& spec) {
  (void)spec;
  int n = s.mod->rank();
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!s.mod->diff(i, j).is_zero()) uf.unite(i, j);
      if (!s.phi.entry(i, j).is_zero()) uf.unite(i, j);
    }
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < n; ++i) comps[uf.find(i)].push_back(i);

  QuadraticSplit out;
  std::vector<int> mid_idx, met_idx;
  bool d_even = (s.ctx.d % 2 == 0);
  int middeg = d_even ? -s.ctx.d / 2 : 0;
  for (auto& [root, comp] : comps) {
    bool middle = d_even;
    for (int i : comp)
      if (s.mod->basis(i).degree != middeg) middle = false;
    bool quadratic = middle && !has_isotropic_half(s, comp);
    if (quadratic) {
      if (s.ctx.d % 4 != 2) {
        out.flagged = true;
        out.notes.push_back(
            "nonzero quadratic block in a shift where it must vanish");
      }
      for (int i : comp) mid_idx.push_back(i);
    } else {
      for (int i : comp) met_idx.push_back(i);
    }
  }
  if (!mid_idx.empty()) out.middle = sub_symmetric(s, mid_idx);
  out.metabolic = sub_symmetric(s, met_idx);
  out.notes.push_back("middle rank " + std::to_string(mid_idx.size()) +
                      ", metabolic rank " + std::to_string(met_idx.size()));
  return out;
}

}  // namespace dgsw
