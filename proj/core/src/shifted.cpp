#include "dgsw/shifted.hpp"

#include <stdexcept>

namespace dgsw {

namespace {

// Split a u-linear one-form into its coefficient per u-generator, the
// coefficients re-expressed over the base algebra. Canonical monomial
// order puts the u's last, so the split is sign-free and the coefficient
// stays on the left.
std::vector<Poly> one_form_coeffs(const OmegaModel& m, const Poly& w) {
  int n = m.ngens();
  std::vector<int> zmap(2 * n, -1);
  for (int i = 0; i < n; ++i) zmap[i] = i;
  std::vector<Poly> out(n, m.base->zero());
  for (auto& [mono, c] : w.terms()) {
    int uidx = -1;
    Monomial prefix;
    for (auto& [g, e] : mono.factors) {
      if (g >= n) {
        if (uidx >= 0 || e != 1)
          throw std::invalid_argument("one_form_coeffs: not u-linear");
        uidx = g - n;
      } else {
        prefix.factors.push_back({g, e});
      }
    }
    if (uidx < 0)
      throw std::invalid_argument("one_form_coeffs: wedge-0 term present");
    Poly term(m.forms.get());
    term.add_term(prefix, c);
    out[uidx] += transport(term, m.base.get(), zmap);
  }
  return out;
}

// (-1)^{deg z_i}: the per-generator sign making the Liouville form
// lambda = sum s_i y_i dz_i closed for the internal differential.
int liouville_sign(int zdeg) { return (zdeg & 1) ? -1 : 1; }

// Shared construction of the total algebra, forms model and Liouville
// form; xi_by_gen[i] (over B) is the twist value paired with base
// generator i, empty meaning untwisted.
ShiftedCotangent build_total(const CdgaPtr& B, const DualityContext& ctx,
                             std::vector<Poly> xi_by_gen) {
  PresentationReport rep = check_presentation(*B);
  if (!rep.pass)
    throw std::invalid_argument("shifted_cotangent: invalid base: " +
                                rep.violations.front());
  int n = B->size();
  if (xi_by_gen.empty()) xi_by_gen.assign(n, B->zero());
  bool twisted = false;
  for (auto& p : xi_by_gen)
    if (!p.is_zero()) twisted = true;

  auto LB = cotangent_complex(B).mod;
  auto Ldag = dagger(LB, ctx);
  for (int i = 0; i < n; ++i)
    if (Ldag->basis(i).degree > 0)
      throw std::invalid_argument(
          "shifted_cotangent: fiber generator y_" + B->gen(i).name +
          " would have positive degree; increase the shift");

  // Fiber in reversed order so each differential refers to earlier
  // generators only.
  std::vector<BasisElement> rb(n);
  for (int i = 0; i < n; ++i) {
    int src = n - 1 - i;
    rb[i] = {"y_" + B->gen(src).name, Ldag->basis(src).degree, std::nullopt};
  }
  bool use_weights = !twisted && !B->weighted();
  if (use_weights)
    for (auto& b : rb) b.weight = 1;
  auto M = DgModule::make(B, rb);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M->set_diff(i, j, Ldag->diff(n - 1 - i, n - 1 - j));

  TwistData t;
  t.base = B;
  t.mod = M;
  for (int j = 0; j < n; ++j) t.xi.push_back(xi_by_gen[n - 1 - j]);
  auto tw = t.validate();
  if (!tw.pass)
    throw std::invalid_argument("shifted_cotangent: bad twist: " +
                                tw.violations.front());
  auto A = sym_twisted(t);

  ShiftedCotangent out;
  out.base = B;
  out.total = A;
  out.model = make_omega(A, n);
  out.fiber_of.resize(n);
  for (int i = 0; i < n; ++i) out.fiber_of[i] = n + (n - 1 - i);
  out.xi = std::move(xi_by_gen);

  const auto& F = out.model->forms;
  Poly lam = F->zero();
  int ntot = A->size();
  for (int i = 0; i < n; ++i) {
    Poly term = F->var(out.fiber_of[i]) * F->var(ntot + i);  // y_i * dz_i
    if (liouville_sign(B->gen(i).degree) < 0) term = -term;
    lam += term;
  }
  out.liouville = DeRhamElement::make(out.model, lam, 1);
  out.omega = apply_d(out.liouville) + apply_D(out.liouville);
  return out;
}

}  // namespace

PresentationReport TwistData::validate() const {
  PresentationReport rep;
  if (!base || !mod || mod->base() != base) {
    rep.fail("twist: missing or mismatched base");
    return rep;
  }
  int n = mod->rank();
  if (static_cast<int>(xi.size()) != n) {
    rep.fail("twist: one value per basis element required");
    return rep;
  }
  auto mrep = mod->validate();
  if (!mrep.pass) {
    rep.fail("twist: underlying module invalid: " + mrep.violations.front());
    return rep;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (!mod->diff(i, j).is_zero())
        rep.fail("twist: module differential not strictly triangular at (" +
                 mod->basis(i).name + ", " + mod->basis(j).name + ")");
  for (int j = 0; j < n; ++j) {
    if (!xi[j].is_zero()) {
      auto deg = xi[j].degree();
      if (!deg || *deg != mod->basis(j).degree + 1) {
        rep.fail("twist: value on " + mod->basis(j).name + " has wrong degree");
        continue;
      }
    }
    // D xi_j + sum_i (-1)^{|m_ij|} m_ij xi_i = 0 (so D^2 y_j = 0).
    Poly acc = base->d(xi[j]);
    for (int i = 0; i < n; ++i) {
      const Poly& m = mod->diff(i, j);
      if (m.is_zero() || xi[i].is_zero()) continue;
      Poly term = m * xi[i];
      if (m.degree().value_or(0) & 1) term = -term;
      acc += term;
    }
    if (!acc.is_zero())
      rep.fail("twist: cocycle identity fails on " + mod->basis(j).name);
  }
  return rep;
}

CdgaPtr sym_twisted(const TwistData& t) {
  auto rep = t.validate();
  if (!rep.pass)
    throw std::invalid_argument("sym_twisted: " + rep.violations.front());
  int nb = t.base->size();
  int n = t.mod->rank();
  bool twisted = false;
  for (auto& p : t.xi)
    if (!p.is_zero()) twisted = true;
  // The fiber weight grading survives only when the twist vanishes and
  // the base carries no grading of its own.
  bool use_weights = !twisted && !t.base->weighted();

  auto A = Cdga::make();
  std::vector<int> genmap(nb);
  for (int i = 0; i < nb; ++i)
    genmap[i] = A->add_generator(
        t.base->gen(i).name, t.base->gen(i).degree,
        use_weights ? std::optional<int>(0) : t.base->gen(i).weight);
  std::vector<int> fib(n);
  for (int j = 0; j < n; ++j) {
    const std::string& nm = t.names.empty()
                                ? t.mod->basis(j).name
                                : t.names[static_cast<std::size_t>(j)];
    fib[j] = A->add_generator(nm, t.mod->basis(j).degree,
                              use_weights ? std::optional<int>(1)
                                          : std::nullopt);
  }
  for (int i = 0; i < nb; ++i)
    A->set_diff(genmap[i], transport(t.base->diff(i), A.get(), genmap));
  for (int j = 0; j < n; ++j) {
    Poly val = transport(t.xi[j], A.get(), genmap);
    for (int i = 0; i < n; ++i) {
      const Poly& m = t.mod->diff(i, j);
      if (m.is_zero()) continue;
      val += transport(m, A.get(), genmap) * A->var(fib[i]);
    }
    A->set_diff(fib[j], val);
  }
  auto arep = check_presentation(*A);
  if (!arep.pass)
    throw std::logic_error("sym_twisted: assembled presentation invalid: " +
                           arep.violations.front());
  return A;
}

ShiftedCotangent shifted_cotangent(const CdgaPtr& B,
                                   const DualityContext& ctx) {
  return build_total(B, ctx, {});
}

ShiftedCotangent twisted_standard_form(const CdgaPtr& B,
                                       const DualityContext& ctx,
                                       const Poly& f) {
  if (f.is_zero()) return build_total(B, ctx, {});
  auto deg = f.degree();
  if (!deg || *deg != 1 - ctx.d)
    throw std::invalid_argument(
        "twisted_standard_form: potential must be homogeneous of degree 1-d");
  if (!f.constant_term().is_zero())
    throw std::invalid_argument(
        "twisted_standard_form: potential must have zero constant term");
  if (!B->d(f).is_zero())
    throw std::invalid_argument(
        "twisted_standard_form: potential must be closed");

  auto mB = make_omega(B);
  Poly df = mB->d(mB->lift(f));
  auto coeff = one_form_coeffs(*mB, df);
  int n = B->size();
  std::vector<Poly> xi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xi[i] = coeff[i];
    if (liouville_sign(B->gen(i).degree) < 0) xi[i] = -xi[i];
  }
  auto out = build_total(B, ctx, std::move(xi));

  // omega = -xi~ + (d + D_A) lambda with xi~ = d f; for an exact twist
  // the wedge-1 parts cancel, leaving the standard two-form.
  std::vector<int> idmap(n);
  for (int i = 0; i < n; ++i) idmap[i] = i;
  Poly xiA = transport_forms(mB, out.model, idmap, df);
  out.omega =
      apply_d(out.liouville) + apply_D(out.liouville) -
      DeRhamElement::make(out.model, xiA, 1, out.liouville.max_wedge);
  return out;
}

Poly transport_forms(const OmegaModelPtr& src, const OmegaModelPtr& dst,
                     const std::vector<int>& genmap, const Poly& w) {
  int ns = src->ngens();
  int nd = dst->ngens();
  std::vector<int> full(2 * static_cast<std::size_t>(ns));
  for (int i = 0; i < ns; ++i) {
    full[i] = genmap[i];
    full[ns + i] = nd + genmap[i];
  }
  return transport(w, dst->forms.get(), full);
}

DgMap two_form_pairing(const OmegaModelPtr& m, const Poly& omega2,
                       const DualityContext& ctx) {
  auto A = m->base;
  auto LA = cotangent_complex(A).mod;
  auto Ld = dagger(LA, ctx);
  int n = m->ngens();
  std::vector<int> zmap(n);
  for (int i = 0; i < n; ++i) zmap[i] = i;
  DgMap phi(Ld, LA, 0);
  for (int a = 0; a < n; ++a) {
    int udeg = A->gen(a).degree + 1;
    std::vector<Poly> vals(2 * static_cast<std::size_t>(n),
                           m->forms->zero());
    vals[n + a] = m->forms->one();
    Derivation del(m->forms.get(), udeg & 1, vals);
    Poly col = del(omega2);
    // [D, contraction] bookkeeping: the dagger differential matches the
    // derived one up to (-1)^{(d+1)|z_a|} per column.
    if (((ctx.d + 1) * A->gen(a).degree) & 1) col = -col;
    if (col.is_zero()) continue;
    auto coeff = one_form_coeffs(*m, col);
    for (int b = 0; b < n; ++b)
      if (!coeff[b].is_zero()) phi.set_entry(b, a, coeff[b]);
  }
  return phi;
}

SymplecticReport verify_symplectic(const OmegaModelPtr& m,
                                   const DeRhamElement& omega,
                                   const DualityContext& ctx,
                                   const SliceSpec& spec) {
  SymplecticReport rep;
  auto dw = apply_d(omega) + apply_D(omega);
  rep.closed = dw.is_zero();
  rep.approximate = omega.clipped || dw.clipped;

  Poly omega2 = omega.component(2);
  DgMap phi = two_form_pairing(m, omega2, ctx);
  bool chain = phi.validate().pass;
  rep.nondegenerate = chain && is_quis(phi, spec);

  if (chain) {
    DgMap lhs = dagger_map(phi, ctx);
    DgMap rhs = double_dual_map(phi.dst(), ctx)
                    .compose(phi)
                    .scale(Rational(ctx.lambdaP));
    rep.symmetric = lhs.entries_equal(rhs);
  }
  return rep;
}

DualityContext calibrate(int d) {
  if (d < 1) throw std::invalid_argument("calibrate: d >= 1 required");
  auto B = Cdga::make();
  B->add_generator("x", 0);
  DualityContext ctx{d, 1};
  auto sc = shifted_cotangent(B, ctx);
  DgMap phi = two_form_pairing(sc.model, sc.omega.component(2), ctx);
  if (!phi.validate().pass)
    throw std::logic_error("calibrate: pairing is not a chain map");
  DgMap lhs = dagger_map(phi, ctx);
  DgMap rhs = double_dual_map(phi.dst(), ctx).compose(phi);
  if (lhs.entries_equal(rhs)) return {d, 1};
  if (lhs.entries_equal(rhs.scale(Rational(-1)))) return {d, -1};
  throw std::logic_error("calibrate: pairing is neither symmetric nor skew");
}

}  // namespace dgsw
