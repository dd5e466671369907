#include "dgsw/cohom.hpp"

#include <algorithm>

namespace dgsw {

namespace {

int gen_weight(const Cdga* alg, int g) {
  return alg->gen(g).weight.value_or(0);
}

int mono_weight(const Cdga* alg, const Monomial& m) {
  int s = 0;
  for (auto& [g, e] : m.factors) s += e * gen_weight(alg, g);
  return s;
}

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

bool diff_weight_homogeneous(const Cdga* alg) {
  for (int i = 0; i < alg->size(); ++i) {
    const Poly& f = alg->diff(i);
    if (f.is_zero()) continue;
    int want = gen_weight(alg, i);
    for (auto& [m, c] : f.terms())
      if (mono_weight(alg, m) != want) return false;
  }
  return true;
}

bool module_weight_homogeneous(const DgModule& mod) {
  const Cdga* alg = mod.alg();
  for (int i = 0; i < mod.rank(); ++i)
    for (int j = 0; j < mod.rank(); ++j) {
      const Poly& e = mod.diff(i, j);
      if (e.is_zero()) continue;
      int want = mod.basis(j).weight.value_or(0) -
                 mod.basis(i).weight.value_or(0);
      for (auto& [m, c] : e.terms())
        if (mono_weight(alg, m) != want) return false;
    }
  return true;
}

// Weight slices are complete within the polynomial-degree cap when every
// generator that can repeat carries positive weight and the cap leaves
// room for the target weight plus one factor of each weight-0 odd cell.
bool weight_slices_complete(const DgModule& mod, int weight, int cap) {
  const Cdga* alg = mod.alg();
  int odd_zero = 0;
  for (int g = 0; g < alg->size(); ++g) {
    if (!alg->gen(g).odd() && gen_weight(alg, g) == 0) return false;
    if (alg->gen(g).odd() && gen_weight(alg, g) == 0) ++odd_zero;
  }
  return cap >= weight + odd_zero;
}

}  // namespace

std::vector<Rational> SliceComplex::coords(const ModElement& e,
                                           int degree) const {
  auto it = cells.find(degree);
  std::vector<Rational> v(it == cells.end() ? 0 : it->second.size());
  if (it == cells.end()) {
    for (auto& p : e.coef)
      if (!p.is_zero())
        throw std::invalid_argument("slice coords: element out of window");
    return v;
  }
  std::map<std::pair<Monomial, int>, std::size_t> index;
  for (std::size_t k = 0; k < it->second.size(); ++k)
    index[{it->second[k].first, it->second[k].second}] = k;
  for (int i = 0; i < mod->rank(); ++i)
    for (auto& [m, c] : e.coef[i].terms()) {
      auto f = index.find({m, i});
      if (f == index.end())
        throw std::invalid_argument("slice coords: cell outside slice");
      v[f->second] = c;
    }
  return v;
}

ModElement SliceComplex::element(const std::vector<Rational>& v,
                                 int degree) const {
  ModElement e = ModElement::zero(mod);
  auto it = cells.find(degree);
  if (it == cells.end()) return e;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    e.coef[it->second[k].second].add_term(it->second[k].first, v[k]);
  }
  return e;
}

SliceComplex build_slice(const DgModulePtr& mod, const SliceSpec& spec,
                         std::optional<int> weight) {
  SliceComplex sc;
  sc.mod = mod;
  sc.spec = spec;
  sc.weight = weight;
  const Cdga* alg = mod->alg();

  bool homog = diff_weight_homogeneous(alg) && module_weight_homogeneous(*mod);
  sc.exact = weight.has_value() && alg->weighted() && homog &&
             weight_slices_complete(*mod, *weight, spec.max_polydeg);

  auto monos = enumerate_monomials(alg, spec.max_polydeg);
  for (auto& m : monos) {
    int md = mono_degree(alg, m);
    int mw = mono_weight(alg, m);
    for (int i = 0; i < mod->rank(); ++i) {
      int deg = md + mod->basis(i).degree;
      if (deg < spec.deg_min || deg > spec.deg_max + 1) continue;
      if (weight && mw + mod->basis(i).weight.value_or(0) != *weight)
        continue;
      sc.cells[deg].emplace_back(m, i);
    }
  }

  std::map<int, std::map<std::pair<Monomial, int>, std::size_t>> index;
  for (auto& [deg, list] : sc.cells) {
    for (std::size_t k = 0; k < list.size(); ++k)
      index[deg][{list[k].first, list[k].second}] = k;
  }

  for (auto& [deg, list] : sc.cells) {
    if (deg > spec.deg_max) continue;
    std::size_t nrows = sc.cells.count(deg + 1) ? sc.cells[deg + 1].size() : 0;
    QMatrix mat(nrows, list.size());
    std::vector<bool> ok(list.size(), true);
    auto& rowindex = index[deg + 1];
    for (std::size_t c = 0; c < list.size(); ++c) {
      ModElement cell = ModElement::zero(mod);
      cell.coef[list[c].second] = Poly::monomial(alg, list[c].first, 1);
      ModElement dc = cell.d();
      for (int i = 0; i < mod->rank(); ++i)
        for (auto& [m, co] : dc.coef[i].terms()) {
          auto f = rowindex.find({m, i});
          if (f == rowindex.end()) {
            ok[c] = false;
          } else {
            mat.at(f->second, c) = co;
          }
        }
    }
    sc.dmat[deg] = std::move(mat);
    sc.good[deg] = std::move(ok);
  }
  return sc;
}

std::vector<std::vector<Rational>> slice_kernel(const SliceComplex& sc,
                                                int degree) {
  auto it = sc.cells.find(degree);
  if (it == sc.cells.end()) return {};
  std::size_t ncells = it->second.size();
  const QMatrix& full = sc.dmat.at(degree);
  const std::vector<bool>& ok = sc.good.at(degree);

  std::vector<std::size_t> good_cols;
  for (std::size_t c = 0; c < ncells; ++c)
    if (ok[c]) good_cols.push_back(c);
  QMatrix restricted(full.rows(), good_cols.size());
  for (std::size_t r = 0; r < full.rows(); ++r)
    for (std::size_t c = 0; c < good_cols.size(); ++c)
      restricted.at(r, c) = full.at(r, good_cols[c]);

  std::vector<std::vector<Rational>> kernel;
  for (auto& v : restricted.nullspace()) {
    std::vector<Rational> w(ncells);
    for (std::size_t c = 0; c < good_cols.size(); ++c) w[good_cols[c]] = v[c];
    kernel.push_back(std::move(w));
  }
  return kernel;
}

std::vector<std::vector<Rational>> slice_image(const SliceComplex& sc,
                                               int degree) {
  auto it = sc.cells.find(degree);
  if (it == sc.cells.end()) return {};
  std::size_t ncells = it->second.size();
  std::vector<std::vector<Rational>> image;
  auto below = sc.dmat.find(degree - 1);
  if (below != sc.dmat.end()) {
    const QMatrix& bm = below->second;
    const std::vector<bool>& bok = sc.good.at(degree - 1);
    for (std::size_t c = 0; c < bm.cols(); ++c) {
      if (!bok[c]) continue;
      std::vector<Rational> v(ncells);
      bool nonzero = false;
      for (std::size_t r = 0; r < ncells; ++r) {
        v[r] = bm.at(r, c);
        if (v[r] != 0) nonzero = true;
      }
      if (nonzero) image.push_back(std::move(v));
    }
  }
  return image;
}

namespace {

struct DegreeHomology {
  int dim = 0;
  std::vector<std::vector<Rational>> reps;  // full-coordinate vectors
};

DegreeHomology slice_homology(const SliceComplex& sc, int degree) {
  DegreeHomology out;
  auto it = sc.cells.find(degree);
  if (it == sc.cells.end()) return out;
  std::size_t ncells = it->second.size();
  auto kernel = slice_kernel(sc, degree);
  auto image = slice_image(sc, degree);
  auto picked = independent_mod(kernel, image, ncells);
  out.dim = static_cast<int>(picked.size());
  for (auto k : picked) out.reps.push_back(kernel[k]);
  return out;
}

void collect_entries(const SliceComplex& sc, CohomologyReport& rep) {
  for (int n = sc.spec.deg_min; n <= sc.spec.deg_max; ++n) {
    auto h = slice_homology(sc, n);
    CohomEntry e;
    e.degree = n;
    e.weight = sc.weight;
    e.dim = h.dim;
    e.exact = sc.exact;
    for (auto& v : h.reps) e.representatives.push_back(sc.element(v, n));
    if (!sc.exact) rep.exact = false;
    rep.entries.push_back(std::move(e));
  }
}

bool weight_mode(const DgModulePtr& mod, const SliceSpec& spec) {
  return spec.max_weight.has_value() && mod->alg()->weighted() &&
         diff_weight_homogeneous(mod->alg()) &&
         module_weight_homogeneous(*mod);
}

}  // namespace

bool weight_sliceable(const DgModulePtr& mod, const SliceSpec& spec) {
  return weight_mode(mod, spec);
}

CohomologyReport cohomology(const DgModulePtr& mod, const SliceSpec& spec) {
  CohomologyReport rep;
  if (weight_mode(mod, spec)) {
    for (int w = 0; w <= *spec.max_weight; ++w)
      collect_entries(build_slice(mod, spec, w), rep);
  } else {
    collect_entries(build_slice(mod, spec, std::nullopt), rep);
  }
  return rep;
}

CohomologyReport cohomology(const CdgaPtr& alg, const SliceSpec& spec) {
  return cohomology(free_cover(alg), spec);
}

BoundaryResult solve_boundary(const DgModulePtr& mod, const ModElement& target,
                              const SliceSpec& spec) {
  BoundaryResult out;
  if (!target.d().is_zero()) return out;  // closed stays false
  out.closed = true;
  if (target.is_zero()) {
    out.primitive = ModElement::zero(mod);
    return out;
  }
  auto tdeg = target.degree();
  if (!tdeg)
    throw std::invalid_argument("solve_boundary: inhomogeneous target");
  int n = *tdeg - 1;
  SliceSpec local = spec;
  local.deg_min = std::min(local.deg_min, n);
  local.deg_max = std::max(local.deg_max, n);

  std::optional<int> w;
  if (weight_mode(mod, spec)) {
    // total weight of the target, when defined
    std::optional<int> tw;
    bool mixed = false;
    for (int i = 0; i < mod->rank(); ++i)
      for (auto& [m, c] : target.coef[i].terms()) {
        int ww = mono_weight(mod->alg(), m) + mod->basis(i).weight.value_or(0);
        if (tw && *tw != ww) mixed = true;
        tw = ww;
      }
    if (!mixed) w = tw;
  }
  SliceComplex sc = build_slice(mod, local, w);

  std::vector<Rational> tv = sc.coords(target, n + 1);
  if (!sc.dmat.count(n)) {
    out.class_coords = tv;
    return out;
  }
  const QMatrix& full = sc.dmat.at(n);
  const std::vector<bool>& ok = sc.good.at(n);
  std::size_t ncols = sc.cells.count(n) ? sc.cells[n].size() : 0;
  std::vector<std::size_t> good_cols;
  for (std::size_t c = 0; c < ncols; ++c)
    if (ok[c]) good_cols.push_back(c);
  QMatrix restricted(full.rows(), good_cols.size());
  for (std::size_t r = 0; r < full.rows(); ++r)
    for (std::size_t c = 0; c < good_cols.size(); ++c)
      restricted.at(r, c) = full.at(r, good_cols[c]);
  auto sol = restricted.solve(tv);
  if (sol) {
    std::vector<Rational> v(ncols);
    for (std::size_t c = 0; c < good_cols.size(); ++c)
      v[good_cols[c]] = (*sol)[c];
    out.primitive = sc.element(v, n);
  } else {
    out.class_coords = tv;
  }
  return out;
}

BoundaryResult solve_boundary(const CdgaPtr& alg, const Poly& target,
                              const SliceSpec& spec) {
  auto cover = free_cover(alg);
  ModElement t{cover, {target}};
  return solve_boundary(cover, t, spec);
}

bool is_contractible(const DgModulePtr& mod, const SliceSpec& spec) {
  auto rep = cohomology(mod, spec);
  for (auto& e : rep.entries)
    if (e.dim != 0) return false;
  return true;
}

bool is_quis(const DgMap& phi, const SliceSpec& spec) {
  if (phi.shift() != 0)
    throw std::invalid_argument("is_quis: shift-0 maps only");
  return is_contractible(cone(phi).cone, spec);
}

DgMap d_commutator(const DgMap& h) {
  DgMap out(h.src(), h.dst(), h.shift() + 1);
  int sgn = (h.shift() & 1) ? 1 : -1;  // -(-1)^shift
  for (int j = 0; j < h.src()->rank(); ++j) {
    std::vector<Poly> ej(h.src()->rank(), Poly(h.src()->alg()));
    ej[j] = h.src()->alg()->one();
    auto col = h.dst()->d(h.apply(ej));
    auto col2 = h.apply(h.src()->d(ej));
    for (int i = 0; i < h.dst()->rank(); ++i)
      out.set_entry(i, j, col[i] + col2[i] * Rational(sgn));
  }
  return out;
}

std::optional<DgMap> solve_homotopy(const DgMap& delta, int max_polydeg) {
  const auto& src = delta.src();
  const auto& dst = delta.dst();
  const Cdga* A = dst->alg();
  int hshift = delta.shift() - 1;

  auto monos = enumerate_monomials(A, max_polydeg);
  std::vector<std::optional<int>> mdeg(monos.size());
  for (std::size_t t = 0; t < monos.size(); ++t)
    mdeg[t] = Poly::monomial(A, monos[t], 1).degree();

  struct Cand {
    int i, j;
    Monomial m;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < dst->rank(); ++i)
    for (int j = 0; j < src->rank(); ++j) {
      int want = src->basis(j).degree + hshift - dst->basis(i).degree;
      for (std::size_t t = 0; t < monos.size(); ++t)
        if (mdeg[t] && *mdeg[t] == want) cands.push_back({i, j, monos[t]});
    }

  // Coordinate space: (i, j, monomial) positions appearing in delta or in
  // any commutator image.
  std::map<std::tuple<int, int, Monomial>, std::size_t> coord;
  auto index_map = [&](const DgMap& f) {
    for (int i = 0; i < f.dst()->rank(); ++i)
      for (int j = 0; j < f.src()->rank(); ++j)
        for (auto& [m, c] : f.entry(i, j).terms())
          coord.emplace(std::make_tuple(i, j, m), coord.size());
  };
  std::vector<DgMap> images;
  images.reserve(cands.size());
  for (auto& c : cands) {
    DgMap h(src, dst, hshift);
    h.set_entry(c.i, c.j, Poly::monomial(A, c.m, 1));
    images.push_back(d_commutator(h));
    index_map(images.back());
  }
  index_map(delta);

  QMatrix mat(coord.size(), cands.size());
  for (std::size_t t = 0; t < images.size(); ++t)
    for (int i = 0; i < dst->rank(); ++i)
      for (int j = 0; j < src->rank(); ++j)
        for (auto& [m, c] : images[t].entry(i, j).terms())
          mat.at(coord.at(std::make_tuple(i, j, m)), t) = c;
  std::vector<Rational> rhs(coord.size(), Rational(0));
  for (int i = 0; i < dst->rank(); ++i)
    for (int j = 0; j < src->rank(); ++j)
      for (auto& [m, c] : delta.entry(i, j).terms())
        rhs[coord.at(std::make_tuple(i, j, m))] = c;

  auto sol = mat.solve(rhs);
  if (!sol) return std::nullopt;
  DgMap h(src, dst, hshift);
  for (std::size_t t = 0; t < cands.size(); ++t) {
    if ((*sol)[t] == Rational(0)) continue;
    Poly e = h.entry(cands[t].i, cands[t].j);
    e.add_term(cands[t].m, (*sol)[t]);
    h.set_entry(cands[t].i, cands[t].j, e);
  }
  return h;
}

std::optional<std::pair<DgMap, DgMap>> solve_factor_through(
    const DgMap& phi, const DgMap& t, int max_polydeg) {
  if (phi.shift() != 0 || t.shift() != 0)
    throw std::invalid_argument("solve_factor_through: shift-0 maps only");
  if (phi.src()->rank() != t.src()->rank())
    throw std::invalid_argument("solve_factor_through: source mismatch");
  const auto& P = phi.src();
  const auto& Q = phi.dst();
  const auto& T = t.dst();
  const Cdga* A = T->alg();

  auto monos = enumerate_monomials(A, max_polydeg);
  std::vector<std::optional<int>> mdeg(monos.size());
  for (std::size_t u = 0; u < monos.size(); ++u)
    mdeg[u] = Poly::monomial(A, monos[u], 1).degree();

  // Unknown coefficients: entries of X: Q -> T (shift 0) and of the
  // homotopy H: P -> T (shift -1).
  struct Cand {
    bool in_x;
    int i, j;
    Monomial m;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < T->rank(); ++i)
    for (int j = 0; j < Q->rank(); ++j) {
      int want = Q->basis(j).degree - T->basis(i).degree;
      for (std::size_t u = 0; u < monos.size(); ++u)
        if (mdeg[u] && *mdeg[u] == want) cands.push_back({true, i, j, monos[u]});
    }
  for (int i = 0; i < T->rank(); ++i)
    for (int j = 0; j < P->rank(); ++j) {
      int want = P->basis(j).degree - 1 - T->basis(i).degree;
      for (std::size_t u = 0; u < monos.size(); ++u)
        if (mdeg[u] && *mdeg[u] == want)
          cands.push_back({false, i, j, monos[u]});
    }

  // Equation block 0: [D, X] = 0 (X is a chain map), entries Q -> T.
  // Equation block 1: X o phi - [D, H] = t, entries P -> T.
  std::map<std::tuple<int, int, int, Monomial>, std::size_t> coord;
  auto index_map = [&](int block, const DgMap& f) {
    for (int i = 0; i < f.dst()->rank(); ++i)
      for (int j = 0; j < f.src()->rank(); ++j)
        for (auto& [m, c] : f.entry(i, j).terms())
          coord.emplace(std::make_tuple(block, i, j, m), coord.size());
  };
  std::vector<std::pair<DgMap, DgMap>> images;  // (block-0 part, block-1 part)
  images.reserve(cands.size());
  for (auto& c : cands) {
    if (c.in_x) {
      DgMap X(Q, T, 0);
      X.set_entry(c.i, c.j, Poly::monomial(A, c.m, 1));
      images.emplace_back(d_commutator(X), X.compose(phi));
    } else {
      DgMap H(P, T, -1);
      H.set_entry(c.i, c.j, Poly::monomial(A, c.m, 1));
      images.emplace_back(DgMap(Q, T, 1),
                          d_commutator(H).scale(Rational(-1)));
    }
    index_map(0, images.back().first);
    index_map(1, images.back().second);
  }
  index_map(1, t);

  QMatrix mat(coord.size(), cands.size());
  for (std::size_t u = 0; u < images.size(); ++u) {
    for (int block = 0; block < 2; ++block) {
      const DgMap& f = block == 0 ? images[u].first : images[u].second;
      for (int i = 0; i < f.dst()->rank(); ++i)
        for (int j = 0; j < f.src()->rank(); ++j)
          for (auto& [m, c] : f.entry(i, j).terms())
            mat.at(coord.at(std::make_tuple(block, i, j, m)), u) = c;
    }
  }
  std::vector<Rational> rhs(coord.size(), Rational(0));
  for (int i = 0; i < T->rank(); ++i)
    for (int j = 0; j < P->rank(); ++j)
      for (auto& [m, c] : t.entry(i, j).terms())
        rhs[coord.at(std::make_tuple(1, i, j, m))] = c;

  auto sol = mat.solve(rhs);
  if (!sol) return std::nullopt;
  DgMap X(Q, T, 0);
  DgMap H(P, T, -1);
  for (std::size_t u = 0; u < cands.size(); ++u) {
    if ((*sol)[u] == Rational(0)) continue;
    DgMap& f = cands[u].in_x ? X : H;
    Poly e = f.entry(cands[u].i, cands[u].j);
    e.add_term(cands[u].m, (*sol)[u]);
    f.set_entry(cands[u].i, cands[u].j, e);
  }
  return std::make_pair(X, H);
}

std::optional<std::pair<DgMap, DgMap>> solve_lift_through(
    const DgMap& g, const DgMap& t, int max_polydeg) {
  if (g.shift() != 0 || t.shift() != 0)
    throw std::invalid_argument("solve_lift_through: shift-0 maps only");
  if (g.dst()->rank() != t.dst()->rank())
    throw std::invalid_argument("solve_lift_through: target mismatch");
  const auto& R = t.src();
  const auto& C = g.src();
  const auto& T = g.dst();
  const Cdga* A = T->alg();

  auto monos = enumerate_monomials(A, max_polydeg);
  std::vector<std::optional<int>> mdeg(monos.size());
  for (std::size_t u = 0; u < monos.size(); ++u)
    mdeg[u] = Poly::monomial(A, monos[u], 1).degree();

  // Unknowns: entries of X: R -> C (shift 0) and of the homotopy
  // H: R -> T (shift -1).
  struct Cand {
    bool in_x;
    int i, j;
    Monomial m;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < C->rank(); ++i)
    for (int j = 0; j < R->rank(); ++j) {
      int want = R->basis(j).degree - C->basis(i).degree;
      for (std::size_t u = 0; u < monos.size(); ++u)
        if (mdeg[u] && *mdeg[u] == want) cands.push_back({true, i, j, monos[u]});
    }
  for (int i = 0; i < T->rank(); ++i)
    for (int j = 0; j < R->rank(); ++j) {
      int want = R->basis(j).degree - 1 - T->basis(i).degree;
      for (std::size_t u = 0; u < monos.size(); ++u)
        if (mdeg[u] && *mdeg[u] == want)
          cands.push_back({false, i, j, monos[u]});
    }

  // Equation block 0: [D, X] = 0; block 1: g o X - [D, H] = t.
  std::map<std::tuple<int, int, int, Monomial>, std::size_t> coord;
  auto index_map = [&](int block, const DgMap& f) {
    for (int i = 0; i < f.dst()->rank(); ++i)
      for (int j = 0; j < f.src()->rank(); ++j)
        for (auto& [m, c] : f.entry(i, j).terms())
          coord.emplace(std::make_tuple(block, i, j, m), coord.size());
  };
  std::vector<std::pair<DgMap, DgMap>> images;
  images.reserve(cands.size());
  for (auto& c : cands) {
    if (c.in_x) {
      DgMap X(R, C, 0);
      X.set_entry(c.i, c.j, Poly::monomial(A, c.m, 1));
      images.emplace_back(d_commutator(X), g.compose(X));
    } else {
      DgMap H(R, T, -1);
      H.set_entry(c.i, c.j, Poly::monomial(A, c.m, 1));
      images.emplace_back(DgMap(R, C, 1),
                          d_commutator(H).scale(Rational(-1)));
    }
    index_map(0, images.back().first);
    index_map(1, images.back().second);
  }
  index_map(1, t);

  QMatrix mat(coord.size(), cands.size());
  for (std::size_t u = 0; u < images.size(); ++u) {
    for (int block = 0; block < 2; ++block) {
      const DgMap& f = block == 0 ? images[u].first : images[u].second;
      for (int i = 0; i < f.dst()->rank(); ++i)
        for (int j = 0; j < f.src()->rank(); ++j)
          for (auto& [m, c] : f.entry(i, j).terms())
            mat.at(coord.at(std::make_tuple(block, i, j, m)), u) = c;
    }
  }
  std::vector<Rational> rhs(coord.size(), Rational(0));
  for (int i = 0; i < T->rank(); ++i)
    for (int j = 0; j < R->rank(); ++j)
      for (auto& [m, c] : t.entry(i, j).terms())
        rhs[coord.at(std::make_tuple(1, i, j, m))] = c;

  auto sol = mat.solve(rhs);
  if (!sol) return std::nullopt;
  DgMap X(R, C, 0);
  DgMap H(R, T, -1);
  for (std::size_t u = 0; u < cands.size(); ++u) {
    if ((*sol)[u] == Rational(0)) continue;
    DgMap& f = cands[u].in_x ? X : H;
    Poly e = f.entry(cands[u].i, cands[u].j);
    e.add_term(cands[u].m, (*sol)[u]);
    f.set_entry(cands[u].i, cands[u].j, e);
  }
  return std::make_pair(X, H);
}

std::optional<DgMap> lift_quis(const CdgaMorphism& f, const DgModulePtr& M,
                               const DgModulePtr& N, const DgMap& phi,
                               const SliceSpec& spec) {
  const Cdga* B = M->alg();
  // H^0 comparison of the bases on slices.
  CdgaPtr bptr = M->base();
  auto ha = cohomology(phi.src()->base(), spec);
  auto hb = cohomology(bptr, spec);
  if (ha.dim(0) != hb.dim(0))
    throw std::invalid_argument("lift_quis: H^0 is not an isomorphism");
  if (!is_quis(phi, spec))
    throw std::invalid_argument("lift_quis: phi is not a quis on slices");

  const Cdga* A = phi.src()->alg();

  // Unknowns: entries of psi over B and of a homotopy h over A.
  struct Unknown {
    bool homotopy;
    int i, j;
    Monomial m;
  };
  std::vector<Unknown> unknowns;
  auto monosB = enumerate_monomials(B, spec.max_polydeg);
  auto monosA = enumerate_monomials(A, spec.max_polydeg);
  for (int i = 0; i < N->rank(); ++i)
    for (int j = 0; j < M->rank(); ++j) {
      int want = M->basis(j).degree - N->basis(i).degree;
      for (auto& m : monosB)
        if (mono_degree(B, m) == want)
          unknowns.push_back({false, i, j, m});
    }
  for (int i = 0; i < N->rank(); ++i)
    for (int j = 0; j < M->rank(); ++j) {
      int want = M->basis(j).degree - 1 - N->basis(i).degree;
      for (auto& m : monosA)
        if (mono_degree(A, m) == want)
          unknowns.push_back({true, i, j, m});
    }

  // Residuals, linear in the unknowns:
  //  (a) over B: D_N psi - psi D_M          (entries per column)
  //  (b) over A: f(psi) + D h + h D - phi   (should vanish)
  auto residual = [&](const DgMap& psi, const DgMap& h, bool with_phi) {
    std::vector<std::vector<Poly>> rows;
    for (int j = 0; j < M->rank(); ++j) {
      std::vector<Poly> col(M->rank(), Poly(B));
      col[j] = B->one();
      auto lhs = N->d(psi.apply(col));
      auto rhs = psi.apply(M->d(col));
      std::vector<Poly> resB(N->rank(), Poly(B));
      for (int i = 0; i < N->rank(); ++i) resB[i] = lhs[i] - rhs[i];
      rows.push_back(std::move(resB));
    }
    auto MA = phi.src();
    auto NA = phi.dst();
    DgMap psiA(MA, NA, 0);
    for (int i = 0; i < N->rank(); ++i)
      for (int j = 0; j < M->rank(); ++j)
        if (!psi.entry(i, j).is_zero())
          psiA.set_entry(i, j, f(psi.entry(i, j)));
    for (int j = 0; j < M->rank(); ++j) {
      std::vector<Poly> col(MA->rank(), Poly(A));
      col[j] = A->one();
      auto v1 = NA->d(h.apply(col));
      auto v2 = h.apply(MA->d(col));
      auto v3 = psiA.apply(col);
      std::vector<Poly> resA(NA->rank(), Poly(A));
      for (int i = 0; i < NA->rank(); ++i) {
        resA[i] = v1[i] + v2[i] + v3[i];
        if (with_phi) resA[i] -= phi.entry(i, j);
      }
      rows.push_back(std::move(resA));
    }
    return rows;
  };

  // Row space: every (block row, module row, monomial) that appears.
  std::map<std::tuple<std::size_t, int, Monomial>, std::size_t> rowindex;
  auto index_rows = [&](const std::vector<std::vector<Poly>>& res) {
    for (std::size_t b = 0; b < res.size(); ++b)
      for (int i = 0; i < static_cast<int>(res[b].size()); ++i)
        for (auto& [m, c] : res[b][i].terms()) {
          auto key = std::make_tuple(b, i, m);
          if (!rowindex.count(key)) rowindex[key] = rowindex.size();
        }
  };

  DgMap psi0(M, N, 0);
  DgMap h0(phi.src(), phi.dst(), -1);
  auto base_res = residual(psi0, h0, true);
  index_rows(base_res);
  std::vector<std::vector<std::vector<Poly>>> probes;
  for (auto& u : unknowns) {
    DgMap psi = psi0;
    DgMap h = h0;
    if (u.homotopy)
      h.set_entry(u.i, u.j, Poly::monomial(A, u.m, 1));
    else
      psi.set_entry(u.i, u.j, Poly::monomial(B, u.m, 1));
    probes.push_back(residual(psi, h, false));
    index_rows(probes.back());
  }

  QMatrix sys(rowindex.size(), unknowns.size());
  std::vector<Rational> rhs(rowindex.size());
  for (auto& [key, r] : rowindex) {
    auto [b, i, m] = key;
    rhs[r] = -base_res[b][i].coefficient(m);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      sys.at(r, u) = probes[u][b][i].coefficient(m);
  }
  auto sol = sys.solve(rhs);
  if (!sol) return std::nullopt;

  DgMap psi(M, N, 0);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if (unknowns[u].homotopy || (*sol)[u] == 0) continue;
    Poly e = psi.entry(unknowns[u].i, unknowns[u].j);
    e.add_term(unknowns[u].m, (*sol)[u]);
    psi.set_entry(unknowns[u].i, unknowns[u].j, std::move(e));
  }
  if (!psi.validate().pass) return std::nullopt;
  if (!is_quis(psi, spec)) return std::nullopt;
  return psi;
}

}  // namespace dgsw
