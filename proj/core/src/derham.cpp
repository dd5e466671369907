#include "dgsw/derham.hpp"

#include <algorithm>

namespace dgsw {

int OmegaModel::wedge_degree(const Monomial& m) const {
  int s = 0;
  for (auto& [g, e] : m.factors)
    if (is_u(g)) s += e;
  return s;
}

int OmegaModel::fiber_weight(const Monomial& m) const {
  int s = 0;
  for (auto& [g, e] : m.factors)
    if (is_fiber(g)) s += e;
  return s;
}

int OmegaModel::fiber_d_count(const Monomial& m) const {
  int s = 0;
  for (auto& [g, e] : m.factors)
    if (is_u(g) && is_fiber(g)) s += e;
  return s;
}

OmegaModelPtr make_omega(const CdgaPtr& A, int fiber_start) {
  auto m = std::make_shared<OmegaModel>();
  m->base = A;
  m->forms = Cdga::make();
  m->fiber_start = fiber_start;
  int n = A->size();
  m->z.resize(n);
  m->u.resize(n);
  for (int i = 0; i < n; ++i)
    m->z[i] = m->forms->add_generator(A->gen(i).name, A->gen(i).degree,
                                      A->gen(i).weight);
  for (int i = 0; i < n; ++i)
    m->u[i] = m->forms->add_generator("d" + A->gen(i).name,
                                      A->gen(i).degree + 1, A->gen(i).weight);
  for (int i = 0; i < n; ++i)
    m->forms->set_diff(m->z[i], m->lift(A->diff(i)));
  std::vector<Poly> dvals(2 * n, Poly(m->forms.get()));
  for (int i = 0; i < n; ++i) dvals[m->z[i]] = m->forms->var(m->u[i]);
  m->d = Derivation(m->forms.get(), 1, dvals);
  for (int j = 0; j < n; ++j)
    m->forms->set_diff(m->u[j], -m->d(m->lift(A->diff(j))));
  return m;
}

DeRhamElement DeRhamElement::make(const OmegaModelPtr& m, Poly v, int p_floor,
                                  int max_wedge) {
  DeRhamElement e;
  e.model = m;
  e.p_floor = p_floor;
  e.max_wedge = max_wedge;
  e.value = v.filter([&](const Monomial& mono) {
    int w = m->wedge_degree(mono);
    if (w > max_wedge) e.clipped = true;
    return w >= p_floor && w <= max_wedge;
  });
  return e;
}

Poly DeRhamElement::component(int r) const {
  return value.filter(
      [&](const Monomial& m) { return model->wedge_degree(m) == r; });
}

DeRhamElement DeRhamElement::operator+(const DeRhamElement& o) const {
  DeRhamElement r = make(model, value + o.value, std::min(p_floor, o.p_floor),
                         std::min(max_wedge, o.max_wedge));
  r.clipped = r.clipped || clipped || o.clipped;
  return r;
}

DeRhamElement DeRhamElement::operator-(const DeRhamElement& o) const {
  return *this + o.scale(Rational(-1));
}

DeRhamElement DeRhamElement::scale(const Rational& c) const {
  DeRhamElement r = *this;
  r.value = r.value * c;
  return r;
}

Derivation VectorField::contraction() const {
  int n = model->ngens();
  std::vector<Poly> vals(2 * n, Poly(model->forms.get()));
  for (int i = 0; i < n; ++i) vals[model->u[i]] = values[i];
  return Derivation(model->forms.get(), (degree - 1) & 1, vals);
}

VectorField euler_field(const OmegaModelPtr& m) {
  VectorField X;
  X.model = m;
  X.degree = 0;
  X.values.assign(m->ngens(), Poly(m->forms.get()));
  for (int i = m->fiber_start; i < m->ngens(); ++i)
    X.values[i] = m->forms->var(m->z[i]);
  return X;
}

VectorField twist_field(const OmegaModelPtr& m,
                        const std::vector<Poly>& xi_values) {
  int nf = m->ngens() - m->fiber_start;
  if (static_cast<int>(xi_values.size()) != nf)
    throw std::invalid_argument("twist_field: one value per fiber generator");
  VectorField X;
  X.model = m;
  X.degree = 1;
  X.values.assign(m->ngens(), Poly(m->forms.get()));
  for (int i = 0; i < nf; ++i)
    X.values[m->fiber_start + i] = m->lift(xi_values[i]);
  return X;
}

namespace {

DeRhamElement rewrap(const DeRhamElement& w, const Poly& v) {
  DeRhamElement r = DeRhamElement::make(w.model, v, w.p_floor, w.max_wedge);
  r.clipped = r.clipped || w.clipped;
  return r;
}

}  // namespace

DeRhamElement apply_d(const DeRhamElement& w) {
  return rewrap(w, w.model->d(w.value));
}

DeRhamElement apply_D(const DeRhamElement& w) {
  return rewrap(w, w.model->D(w.value));
}

DeRhamElement contract(const VectorField& X, const DeRhamElement& w) {
  return rewrap(w, X.contraction()(w.value));
}

DeRhamElement lie(const VectorField& X, const DeRhamElement& w) {
  auto iota = X.contraction();
  const Poly& v = w.value;
  Poly r = w.model->d(iota(v));
  // graded commutator [d, iota]: plus when the contraction is odd
  if (iota.parity())
    r += iota(w.model->d(v));
  else
    r -= iota(w.model->d(v));
  return rewrap(w, r);
}

DeRhamElement apply_operator(const OperatorSpec& op, const DeRhamElement& w) {
  switch (op.kind) {
    case OperatorSpec::d:
      return apply_d(w);
    case OperatorSpec::D:
      return apply_D(w);
    case OperatorSpec::iota:
      return contract(*op.field, w);
    case OperatorSpec::lie:
      return lie(*op.field, w);
  }
  throw std::logic_error("apply_operator: unknown operator");
}

std::map<int, DeRhamElement> weight_decompose(const DeRhamElement& w) {
  std::map<int, DeRhamElement> out;
  std::map<int, Poly> parts;
  for (auto& [m, c] : w.value.terms()) {
    auto it = parts.find(w.model->fiber_weight(m));
    if (it == parts.end())
      it = parts.emplace(w.model->fiber_weight(m), Poly(w.model->forms.get()))
               .first;
    it->second.add_term(m, c);
  }
  for (auto& [lam, p] : parts) {
    auto e = rewrap(w, p);
    out.emplace(lam, e);
  }
  return out;
}

std::vector<FiltrationLabel> filtration_label(const DeRhamElement& w) {
  std::vector<FiltrationLabel> out;
  for (auto& [m, c] : w.value.terms())
    out.push_back({m, w.model->fiber_d_count(m), w.model->fiber_weight(m)});
  return out;
}

DeRhamElement exp_xi(const VectorField& xi, const DeRhamElement& w) {
  auto iota = xi.contraction();
  DeRhamElement acc = w;
  Poly term = w.value;
  Rational fact(1);
  for (int k = 1; !term.is_zero(); ++k) {
    term = iota(term);
    fact = fact / Rational(k);
    acc = acc + rewrap(w, term * fact);
  }
  return acc;
}

// --- slices of the forms algebra ---

namespace {

bool cell_ok(const OmegaModel& m, const OmegaSliceSpec& spec,
             const Monomial& mono) {
  if (mono.polydeg() > spec.base.max_polydeg) return false;
  int w = m.wedge_degree(mono);
  if (w < spec.min_wedge || w > spec.max_wedge) return false;
  if (spec.fiber_weight && m.fiber_weight(mono) != *spec.fiber_weight)
    return false;
  if (spec.base.max_weight) {
    int wt = 0;
    for (auto& [g, e] : mono.factors)
      wt += e * m.forms->gen(g).weight.value_or(0);
    if (wt > *spec.base.max_weight) return false;
  }
  return true;
}

}  // namespace

OmegaSlice build_omega_slice(const OmegaModelPtr& m, const OmegaSliceSpec& spec,
                             const std::function<Poly(const Poly&)>& op) {
  OmegaSlice sc;
  sc.model = m;
  sc.spec = spec;
  int ng = m->forms->size();

  std::vector<std::pair<int, int>> stack;
  std::function<void(int, int)> rec = [&](int next, int polydeg) {
    Monomial mono{stack};
    if (cell_ok(*m, spec, mono)) {
      auto deg = Poly::monomial(m->forms.get(), mono, Rational(1)).degree();
      int dg = mono.is_unit() ? 0 : *deg;
      if (dg >= spec.base.deg_min && dg <= spec.base.deg_max + 1)
        sc.cells[dg].push_back(mono);
    }
    for (int g = next; g < ng; ++g) {
      int maxe = m->forms->gen(g).odd() ? 1 : spec.base.max_polydeg;
      for (int e = 1; e <= maxe && polydeg + e <= spec.base.max_polydeg; ++e) {
        // fiber-weight and wedge caps prune monotone quantities
        stack.emplace_back(g, e);
        Monomial probe{stack};
        bool prune = false;
        if (m->wedge_degree(probe) > spec.max_wedge) prune = true;
        if (spec.fiber_weight && m->fiber_weight(probe) > *spec.fiber_weight)
          prune = true;
        if (!prune) rec(g + 1, polydeg + e);
        stack.pop_back();
        if (prune) break;
      }
    }
  };
  rec(0, 0);
  for (auto& [dg, cells] : sc.cells) std::sort(cells.begin(), cells.end());

  // index per degree
  std::map<int, std::map<Monomial, int>> index;
  for (auto& [dg, cells] : sc.cells)
    for (std::size_t i = 0; i < cells.size(); ++i)
      index[dg][cells[i]] = static_cast<int>(i);

  for (auto& [dg, cells] : sc.cells) {
    int nrows = sc.dim(dg + 1);
    QMatrix mat(nrows, static_cast<int>(cells.size()));
    std::vector<bool> goodv(cells.size(), true);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      Poly img = op(Poly::monomial(m->forms.get(), cells[j], Rational(1)));
      bool good = true;
      for (auto& [mm, c] : img.terms()) {
        auto it = index.find(dg + 1);
        if (it == index.end() || !it->second.count(mm)) {
          good = false;
          break;
        }
      }
      goodv[j] = good;
      if (good)
        for (auto& [mm, c] : img.terms())
          mat.at(index[dg + 1][mm], static_cast<int>(j)) = c;
    }
    sc.good[dg] = goodv;
    sc.dmat.emplace(dg, std::move(mat));
  }
  return sc;
}

std::vector<Rational> OmegaSlice::coords(const Poly& w, int degree) const {
  auto it = cells.find(degree);
  std::vector<Rational> v(it == cells.end() ? 0 : it->second.size(),
                          Rational(0));
  for (auto& [m, c] : w.terms()) {
    if (it == cells.end()) throw std::out_of_range("no cells at this degree");
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), m);
    if (pos == it->second.end() || !(*pos == m))
      throw std::out_of_range("monomial outside the slice");
    v[pos - it->second.begin()] = c;
  }
  return v;
}

Poly OmegaSlice::element(const std::vector<Rational>& v, int degree) const {
  Poly p(model->forms.get());
  auto it = cells.find(degree);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] == 0)) p.add_term(it->second[i], v[i]);
  return p;
}

namespace {

std::vector<std::vector<Rational>> omega_kernel(const OmegaSlice& sc, int n) {
  std::vector<std::vector<Rational>> out;
  auto it = sc.cells.find(n);
  if (it == sc.cells.end()) return out;
  int ncells = static_cast<int>(it->second.size());
  auto git = sc.good.find(n);
  std::vector<int> goodidx;
  for (int j = 0; j < ncells; ++j)
    if (git->second[j]) goodidx.push_back(j);
  auto dit = sc.dmat.find(n);
  QMatrix sub(dit->second.rows(), static_cast<int>(goodidx.size()));
  for (int r = 0; r < sub.rows(); ++r)
    for (std::size_t c = 0; c < goodidx.size(); ++c)
      sub.at(r, static_cast<int>(c)) = dit->second.at(r, goodidx[c]);
  for (auto& v : sub.nullspace()) {
    std::vector<Rational> full(ncells, Rational(0));
    for (std::size_t c = 0; c < goodidx.size(); ++c) full[goodidx[c]] = v[c];
    out.push_back(std::move(full));
  }
  return out;
}

std::vector<std::vector<Rational>> omega_image(const OmegaSlice& sc, int n) {
  std::vector<std::vector<Rational>> out;
  auto dit = sc.dmat.find(n - 1);
  if (dit == sc.dmat.end()) return out;
  const QMatrix& mat = dit->second;
  for (int j = 0; j < mat.cols(); ++j) {
    std::vector<Rational> col(mat.rows());
    bool nz = false;
    for (int r = 0; r < mat.rows(); ++r) {
      col[r] = mat.at(r, j);
      if (!(col[r] == 0)) nz = true;
    }
    if (nz) out.push_back(std::move(col));
  }
  return out;
}

}  // namespace

OmegaCohomEntry omega_cohomology(const OmegaSlice& sc, int degree) {
  OmegaCohomEntry out;
  auto ker = omega_kernel(sc, degree);
  auto im = omega_image(sc, degree);
  std::size_t nc = sc.dim(degree);
  auto reps = independent_mod(ker, im, nc);
  out.dim = static_cast<int>(reps.size());
  for (auto idx : reps)
    out.representatives.push_back(sc.element(ker[idx], degree));
  return out;
}

GradedPieceReport graded_piece_model(const OmegaModelPtr& m, int p, int i,
                                     int lambda, const OmegaSliceSpec& spec) {
  if (lambda == 0)
    throw std::invalid_argument(
        "graded_piece_model: weight zero reduces to the base");
  GradedPieceReport rep;

  auto total = [&](const Poly& w) { return m->d(w) + m->D(w); };
  auto internal = [&](const Poly& w) { return m->D(w); };

  OmegaSliceSpec sdir = spec;
  sdir.min_wedge = p;
  sdir.fiber_weight = lambda;
  auto sc = build_omega_slice(m, sdir, total);
  rep.dim_direct = omega_cohomology(sc, i).dim;

  OmegaSliceSpec sp = spec;
  sp.min_wedge = p;
  sp.max_wedge = p;
  sp.fiber_weight = lambda;
  auto scp = build_omega_slice(m, sp, internal);
  auto hp = omega_cohomology(scp, i);

  OmegaSliceSpec sp1 = spec;
  sp1.min_wedge = p + 1;
  sp1.max_wedge = p + 1;
  sp1.fiber_weight = lambda;
  auto scp1 = build_omega_slice(m, sp1, internal);
  auto im1 = omega_image(scp1, i + 1);
  std::size_t nc1 = scp1.dim(i + 1);
  std::vector<std::vector<Rational>> pushed = im1;
  int base = static_cast<int>(span_dim(im1, nc1));
  for (auto& h : hp.representatives)
    pushed.push_back(scp1.coords(m->d(h), i + 1));
  int rank = static_cast<int>(span_dim(pushed, nc1)) - base;
  rep.dim_kernel = hp.dim - rank;

  rep.agree = (rep.dim_direct == rep.dim_kernel);
  return rep;
}

PrimitiveResult find_primitive(const DeRhamElement& gamma,
                               const OmegaSliceSpec& spec) {
  PrimitiveResult out;
  const auto& m = gamma.model;
  auto total = [&](const Poly& w) { return m->d(w) + m->D(w); };
  if (gamma.is_zero()) {
    out.closed = true;
    out.primitive = DeRhamElement::make(m, Poly(m->forms.get()), 0,
                                        gamma.max_wedge);
    return out;
  }
  auto deg = gamma.value.degree();
  if (!deg) return out;  // inhomogeneous: not closed in our sense
  if (!total(gamma.value).is_zero()) return out;
  out.closed = true;

  auto sc = build_omega_slice(m, spec, total);
  auto target = sc.coords(gamma.value, *deg);

  auto it = sc.cells.find(*deg - 1);
  int ncells = it == sc.cells.end() ? 0 : static_cast<int>(it->second.size());
  auto git = sc.good.find(*deg - 1);
  auto dit = sc.dmat.find(*deg - 1);
  std::vector<int> goodidx;
  for (int j = 0; j < ncells; ++j)
    if (git != sc.good.end() && git->second[j]) goodidx.push_back(j);
  QMatrix sub(static_cast<int>(target.size()),
              static_cast<int>(goodidx.size()));
  for (int r = 0; r < sub.rows(); ++r)
    for (std::size_t c = 0; c < goodidx.size(); ++c)
      sub.at(r, static_cast<int>(c)) = dit->second.at(r, goodidx[c]);
  auto sol = sub.solve(target);
  if (!sol) {
    out.class_coords = target;
    return out;
  }
  Poly f(m->forms.get());
  for (std::size_t c = 0; c < goodidx.size(); ++c)
    if (!((*sol)[c] == 0)) f.add_term(it->second[goodidx[c]], (*sol)[c]);
  // normalize the constant term away
  f.add_term(Monomial{}, -f.constant_term());
  out.primitive = DeRhamElement::make(m, f, std::max(0, gamma.p_floor - 1),
                                      gamma.max_wedge);
  return out;
}

}  // namespace dgsw
