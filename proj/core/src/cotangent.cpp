#include "dgsw/cotangent.hpp"

#include <algorithm>

namespace dgsw {

namespace {

// One-form model: the algebra extended by symbols du_i of degree
// deg z_i + 1, with D(du_j) = -d(D z_j) so that dD + Dd = 0.
struct OneFormModel {
  CdgaPtr W;
  std::vector<int> z;  // images of the original generators
  std::vector<int> u;  // du symbols
  Derivation d;        // z_i -> u_i, u_i -> 0
};

OneFormModel one_form_model(const CdgaPtr& A) {
  OneFormModel m;
  m.W = Cdga::make();
  int n = A->size();
  m.z.resize(n);
  m.u.resize(n);
  for (int i = 0; i < n; ++i)
    m.z[i] = m.W->add_generator(A->gen(i).name, A->gen(i).degree,
                                A->gen(i).weight);
  for (int i = 0; i < n; ++i)
    m.u[i] = m.W->add_generator("d" + A->gen(i).name, A->gen(i).degree + 1,
                                A->gen(i).weight);
  for (int i = 0; i < n; ++i)
    m.W->set_diff(m.z[i], transport(A->diff(i), m.W.get(), m.z));
  std::vector<Poly> dvals(2 * n, Poly(m.W.get()));
  for (int i = 0; i < n; ++i) dvals[m.z[i]] = m.W->var(m.u[i]);
  m.d = Derivation(m.W.get(), 1, dvals);
  for (int j = 0; j < n; ++j) {
    Poly fj = transport(A->diff(j), m.W.get(), m.z);
    m.W->set_diff(m.u[j], -m.d(fj));
  }
  return m;
}

// Split a u-linear element of W into module coefficients over A.
std::vector<Poly> extract_linear(const OneFormModel& m, const CdgaPtr& A,
                                 const Poly& v) {
  int n = A->size();
  std::vector<int> back(2 * n, -1);
  for (int i = 0; i < n; ++i) back[m.z[i]] = i;
  std::vector<Poly> coef(n, Poly(A.get()));
  for (auto& [mono, c] : v.terms()) {
    Monomial zpart;
    int uindex = -1;
    for (auto& [g, e] : mono.factors) {
      if (back[g] >= 0) {
        zpart.factors.emplace_back(back[g], e);
      } else {
        if (uindex >= 0 || e != 1)
          throw std::logic_error("one-form expected to be u-linear");
        uindex = g - n;
      }
    }
    if (uindex < 0) throw std::logic_error("one-form has a 0-form term");
    coef[uindex].add_term(zpart, c);
  }
  return coef;
}

}  // namespace

ModElement CotangentComplex::d_of(const Poly& a) const {
  auto m = one_form_model(alg);
  std::vector<int> zmap = m.z;
  Poly v = m.d(transport(a, m.W.get(), zmap));
  return {mod, extract_linear(m, alg, v)};
}

CotangentComplex cotangent_complex(const CdgaPtr& A) {
  auto rep = check_presentation(*A);
  if (!rep.pass)
    throw std::invalid_argument("cotangent_complex: invalid presentation");
  auto m = one_form_model(A);
  std::vector<BasisElement> basis;
  for (int i = 0; i < A->size(); ++i)
    basis.push_back({"d" + A->gen(i).name, A->gen(i).degree,
                     A->gen(i).weight});
  auto mod = DgModule::make(A, std::move(basis));
  for (int j = 0; j < A->size(); ++j) {
    const Poly& val = m.W->diff(m.u[j]);  // already -d(f_j)
    if (val.is_zero()) continue;
    auto coef = extract_linear(m, A, val);
    for (int i = 0; i < A->size(); ++i)
      if (!coef[i].is_zero()) mod->set_diff(i, j, coef[i]);
  }
  return CotangentComplex{A, mod};
}

RelativeTriangle relative_cotangent_triangle(const CdgaPtr& B,
                                             const CdgaPtr& A) {
  int nb = B->size(), na = A->size();
  if (nb > na)
    throw std::invalid_argument("relative cotangent: B is not a prefix of A");
  std::vector<int> idmap(nb);
  for (int i = 0; i < nb; ++i) {
    idmap[i] = i;
    if (B->gen(i).name != A->gen(i).name ||
        B->gen(i).degree != A->gen(i).degree)
      throw std::invalid_argument("relative cotangent: B is not a prefix of A");
  }
  for (int i = 0; i < nb; ++i)
    if (!(transport(B->diff(i), A.get(), idmap) == A->diff(i)))
      throw std::invalid_argument(
          "relative cotangent: differentials disagree on the prefix");

  auto LA = cotangent_complex(A).mod;

  std::vector<BasisElement> rb, qb;
  for (int i = 0; i < nb; ++i) rb.push_back(LA->basis(i));
  for (int i = nb; i < na; ++i) qb.push_back(LA->basis(i));
  auto restricted = DgModule::make(A, rb);
  auto relative = DgModule::make(A, qb);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      restricted->set_diff(i, j, LA->diff(i, j));
  for (int i = nb; i < na; ++i)
    for (int j = nb; j < na; ++j)
      relative->set_diff(i - nb, j - nb, LA->diff(i, j));

  RelativeTriangle tri;
  tri.restricted = restricted;
  tri.full = LA;
  tri.relative = relative;
  tri.incl = DgMap(restricted, LA, 0);
  for (int i = 0; i < nb; ++i) tri.incl.set_entry(i, i, A->one());
  tri.proj = DgMap(LA, relative, 0);
  for (int i = nb; i < na; ++i) tri.proj.set_entry(i - nb, i, A->one());
  auto C = cone(tri.incl);
  tri.cone_to_relative = DgMap(C.cone, relative, 0);
  for (int i = nb; i < na; ++i)
    tri.cone_to_relative.set_entry(i - nb, nb + i, A->one());
  return tri;
}

namespace {

// Rank of H^n(B) -> H^n(A) on one slice.
int induced_rank(const CdgaMorphism& f, const SliceComplex& scB,
                 const SliceComplex& scA, int degree) {
  auto kerB = slice_kernel(scB, degree);
  auto imA = slice_image(scA, degree);
  auto itA = scA.cells.find(degree);
  std::size_t ncells = itA == scA.cells.end() ? 0 : itA->second.size();
  std::vector<std::vector<Rational>> pushed;
  for (auto& v : kerB) {
    ModElement e = scB.element(v, degree);
    ModElement img{scA.mod, {f(e.coef[0])}};
    pushed.push_back(scA.coords(img, degree));
  }
  std::vector<std::vector<Rational>> all = imA;
  for (auto& v : pushed) all.push_back(v);
  return static_cast<int>(span_dim(all, ncells) - span_dim(imA, ncells));
}

struct HComparison {
  std::map<int, int> dimB, dimA, rank;
};

HComparison compare_h(const CdgaPtr& B, const CdgaPtr& A,
                      const SliceSpec& spec) {
  HComparison out;
  auto f = CdgaMorphism::inclusion(B.get(), A.get());
  auto FB = free_cover(B);
  auto FA = free_cover(A);
  std::vector<std::optional<int>> weights;
  if (weight_sliceable(FB, spec) && weight_sliceable(FA, spec)) {
    for (int w = 0; w <= *spec.max_weight; ++w) weights.push_back(w);
  } else {
    weights.push_back(std::nullopt);
  }
  for (int n = spec.deg_min; n <= spec.deg_max; ++n) {
    out.dimB[n] = 0;
    out.dimA[n] = 0;
    out.rank[n] = 0;
  }
  for (auto& w : weights) {
    auto scB = build_slice(FB, spec, w);
    auto scA = build_slice(FA, spec, w);
    for (int n = spec.deg_min; n <= spec.deg_max; ++n) {
      auto kb = slice_kernel(scB, n);
      auto ib = slice_image(scB, n);
      auto ka = slice_kernel(scA, n);
      auto ia = slice_image(scA, n);
      std::size_t cb = scB.cells.count(n) ? scB.cells.at(n).size() : 0;
      std::size_t ca = scA.cells.count(n) ? scA.cells.at(n).size() : 0;
      out.dimB[n] += static_cast<int>(
          independent_mod(kb, ib, cb).size());
      out.dimA[n] += static_cast<int>(
          independent_mod(ka, ia, ca).size());
      out.rank[n] += induced_rank(f, scB, scA, n);
    }
  }
  return out;
}

// A (x)_B A as an A-module: basis = monomials in the generators of A
// beyond the prefix B, truncated to the window. Coefficients of the
// differential land in B, so splitting each canonical monomial into its
// prefix and suffix parts is sign-free.
DgModulePtr tensor_square_model(const CdgaPtr& A, int nb,
                                const SliceSpec& spec, bool* complete) {
  int na = A->size();
  std::vector<Monomial> basis_monos;
  std::vector<std::pair<int, int>> stack;
  bool all_weighted = true;
  for (int i = nb; i < na; ++i)
    if (!A->gen(i).weight) all_weighted = false;
  std::function<void(int, int, int, int)> rec = [&](int next, int polydeg,
                                                    int degree, int weight) {
    Monomial m{stack};
    basis_monos.push_back(m);
    for (int g = next; g < na; ++g) {
      int maxe = A->gen(g).odd() ? 1 : spec.max_polydeg;
      for (int e = 1; e <= maxe; ++e) {
        int pd = polydeg + e;
        int dg = degree + e * A->gen(g).degree;
        int w = weight + e * A->gen(g).weight.value_or(0);
        if (pd > spec.max_polydeg) break;
        if (dg < spec.deg_min) break;
        if (spec.max_weight && w > *spec.max_weight) break;
        stack.emplace_back(g, e);
        rec(g + 1, pd, dg, w);
        stack.pop_back();
      }
    }
  };
  rec(nb, 0, 0, 0);

  std::map<Monomial, int> index;
  std::vector<BasisElement> basis;
  for (auto& m : basis_monos) {
    index[m] = static_cast<int>(basis.size());
    int dg = 0, w = 0;
    std::string name = "1";
    for (auto& [g, e] : m.factors) {
      dg += e * A->gen(g).degree;
      w += e * A->gen(g).weight.value_or(0);
      name += "*" + A->gen(g).name +
              (e > 1 ? "^" + std::to_string(e) : "");
    }
    basis.push_back({name, dg,
                     all_weighted ? std::optional<int>(w) : std::nullopt});
  }
  auto T = DgModule::make(A, basis);
  *complete = true;
  for (int j = 0; j < T->rank(); ++j) {
    Poly dj = A->d(Poly::monomial(A.get(), basis_monos[j], Rational(1)));
    std::map<int, Poly> rows;
    for (auto& [m, c] : dj.terms()) {
      Monomial prefix, suffix;
      for (auto& [g, e] : m.factors)
        (g < nb ? prefix : suffix).factors.emplace_back(g, e);
      auto it = index.find(suffix);
      if (it == index.end()) {
        *complete = false;  // truncated away; window result is approximate
        continue;
      }
      auto r = rows.find(it->second);
      if (r == rows.end()) r = rows.emplace(it->second, Poly(A.get())).first;
      r->second.add_term(prefix, c);
    }
    for (auto& [i, p] : rows) T->set_diff(i, j, p);
  }
  return T;
}

}  // namespace

ConnectivityReport check_connectivity(const CdgaPtr& B, const CdgaPtr& A,
                                      int d, const SliceSpec& spec) {
  ConnectivityReport rep;
  auto tri = relative_cotangent_triangle(B, A);
  rep.exact_slices = weight_sliceable(tri.relative, spec) &&
                     weight_sliceable(free_cover(A), spec);

  auto hcmp = compare_h(B, A, spec);
  bool h0_epi = hcmp.rank.count(0) && hcmp.rank[0] == hcmp.dimA[0];

  auto hrel = cohomology(tri.relative, spec);
  bool rel_vanish = true;
  for (auto& e : hrel.entries)
    if (e.degree >= -d + 1 && e.dim != 0) rel_vanish = false;
  rep.cond_i = h0_epi && rel_vanish;

  // (ii): H^i(B) -> H^i(A) iso for i > -d+1, epi at -d+1.
  bool conn = true;
  for (int i = -d + 2; i <= spec.deg_max; ++i)
    if (hcmp.dimB[i] != hcmp.rank[i] || hcmp.rank[i] != hcmp.dimA[i])
      conn = false;
  if (-d + 1 >= spec.deg_min && hcmp.rank[-d + 1] != hcmp.dimA[-d + 1])
    conn = false;
  rep.cond_ii = conn;
  rep.agree = (rep.cond_i == rep.cond_ii);

  if (rep.cond_i) {
    // Compare H^{-d} of the base-changed mapping cone, built from the
    // semifree module model of A over B, with H^{-d} of the relative
    // cotangent complex.
    int n = -d;
    rep.moreover_degree = n;
    if (n - 1 < spec.deg_min) {
      rep.notes.push_back("window too small for the mapping-cone comparison");
      rep.moreover_holds = true;
    } else {
      bool complete = true;
      auto T = tensor_square_model(A, B->size(), spec, &complete);
      if (!complete) {
        rep.notes.push_back("tensor-square model truncated; comparison is "
                            "approximate");
        rep.exact_slices = false;
      }
      auto FA = free_cover(A);
      DgMap unit(FA, T, 0);
      int uidx = T->find("1");
      unit.set_entry(uidx, 0, A->one());
      auto K = cone(unit).cone;
      auto hK = cohomology(K, spec);
      if (hK.exact && hrel.exact && spec.max_weight) {
        rep.moreover_holds = true;
        for (int w = 0; w <= *spec.max_weight; ++w)
          if (hK.dim(n, w) != hrel.dim(n, w)) rep.moreover_holds = false;
      } else {
        rep.moreover_holds = (hK.dim(n) == hrel.dim(n));
      }
    }
  } else {
    rep.moreover_holds = true;
    rep.notes.push_back("moreover clause not applicable (conditions fail)");
  }
  return rep;
}

FinitePresentationReport is_finitely_presented_criterion(const CdgaPtr& A) {
  FinitePresentationReport rep;
  int zero_gens = 0, minus_one = 0;
  for (int i = 0; i < A->size(); ++i) {
    if (A->gen(i).degree == 0) ++zero_gens;
    if (A->gen(i).degree == -1) ++minus_one;
  }
  rep.notes.push_back("H^0 presented by " + std::to_string(zero_gens) +
                      " generators and " + std::to_string(minus_one) +
                      " relations");
  rep.notes.push_back("cotangent complex is perfect: free on " +
                      std::to_string(A->size()) + " cells");
  return rep;
}

}  // namespace dgsw
