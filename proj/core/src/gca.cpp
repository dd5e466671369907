#include "dgsw/gca.hpp"

#include <algorithm>

namespace dgsw {

Poly::Poly(const Cdga* alg, const Rational& c) : alg_(alg) {
  if (c != 0) terms_[Monomial{}] = c;
}

Poly Poly::generator(const Cdga* alg, int gen) {
  Poly p(alg);
  p.terms_[Monomial{{{gen, 1}}}] = 1;
  return p;
}

Poly Poly::monomial(const Cdga* alg, Monomial m, const Rational& c) {
  Poly p(alg);
  if (c != 0) p.terms_[std::move(m)] = c;
  return p;
}

namespace {

int mono_degree(const Cdga* alg, const Monomial& m) {
  int s = 0;
  for (auto& [g, e] : m.factors) s += e * alg->gen(g).degree;
  return s;
}

int mono_weight(const Cdga* alg, const Monomial& m) {
  int s = 0;
  for (auto& [g, e] : m.factors) s += e * alg->gen(g).weight.value_or(0);
  return s;
}

// Canonical product of two monomials; returns false if it vanishes
// (square of an odd generator).
bool mono_mul(const Cdga* alg, const Monomial& a, const Monomial& b,
              Monomial& out, int& sign) {
  // Koszul sign: each odd factor of b passes every odd factor of a with a
  // strictly larger generator index.
  int flips = 0;
  std::vector<int> odd_a;  // indices of odd generators in a, ascending
  for (auto& [g, e] : a.factors)
    if (alg->gen(g).odd()) odd_a.push_back(g);
  for (auto& [g, e] : b.factors) {
    if (!alg->gen(g).odd()) continue;
    auto it = std::upper_bound(odd_a.begin(), odd_a.end(), g);
    flips += static_cast<int>(odd_a.end() - it);
  }
  out.factors.clear();
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() ||
        (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() ||
               b.factors[j].first < a.factors[i].first) {
      out.factors.push_back(b.factors[j++]);
    } else {
      int g = a.factors[i].first;
      if (alg->gen(g).odd()) return false;  // odd square
      out.factors.emplace_back(g, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
    }
  }
  sign = (flips & 1) ? -1 : 1;
  return true;
}

}  // namespace

std::optional<int> Poly::degree() const {
  if (terms_.empty()) return std::nullopt;
  std::optional<int> d;
  for (auto& [m, c] : terms_) {
    int md = mono_degree(alg_, m);
    if (d && *d != md) return std::nullopt;
    d = md;
  }
  return d;
}

std::optional<int> Poly::weight() const {
  if (terms_.empty()) return std::nullopt;
  std::optional<int> w;
  for (auto& [m, c] : terms_) {
    int mw = mono_weight(alg_, m);
    if (w && *w != mw) return std::nullopt;
    w = mw;
  }
  return w;
}

int Poly::max_polydeg() const {
  int s = 0;
  for (auto& [m, c] : terms_) s = std::max(s, m.polydeg());
  return s;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  if (r.alg_ == nullptr) r.alg_ = o.alg_;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(alg_);
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(alg_);
  if (c == 0) return r;
  for (auto& [m, co] : terms_) r.terms_[m] = co * c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (alg_ && o.alg_ && alg_ != o.alg_)
    throw std::invalid_argument("Poly::mul: generator universe mismatch");
  const Cdga* alg = alg_ ? alg_ : o.alg_;
  Poly r(alg);
  Monomial prod;
  int sign;
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) {
      if (!mono_mul(alg, ma, mb, prod, sign)) continue;
      r.add_term(prod, ca * cb * sign);
    }
  return r;
}

Poly Poly::filter(const std::function<bool(const Monomial&)>& keep) const {
  Poly r(alg_);
  for (auto& [m, c] : terms_)
    if (keep(m)) r.terms_[m] = c;
  return r;
}

Poly Derivation::operator()(const Poly& p) const {
  Poly r(alg_);
  for (auto& [m, c] : p.terms()) {
    int predeg = 0;
    for (std::size_t j = 0; j < m.factors.size(); ++j) {
      auto [g, e] = m.factors[j];
      const Poly& val = values_[g];
      if (!val.is_zero()) {
        Monomial prefix, suffix;
        for (std::size_t l = 0; l < j; ++l)
          prefix.factors.push_back(m.factors[l]);
        if (e > 1) prefix.factors.emplace_back(g, e - 1);
        for (std::size_t l = j + 1; l < m.factors.size(); ++l)
          suffix.factors.push_back(m.factors[l]);
        int sgn = (parity_ && (predeg & 1)) ? -1 : 1;
        Rational coef = c * e * sgn;
        Poly term = Poly::monomial(alg_, prefix, coef) * val *
                    Poly::monomial(alg_, suffix, Rational(1));
        r += term;
      }
      predeg += e * alg_->gen(g).degree;
    }
  }
  return r;
}

int Cdga::add_generator(const std::string& name, int degree,
                        std::optional<int> weight) {
  if (index_.count(name))
    throw std::invalid_argument("duplicate generator name: " + name);
  int idx = size();
  gens_.push_back(Generator{name, degree, weight});
  diffs_.push_back(Poly(this));
  index_[name] = idx;
  return idx;
}

void Cdga::set_diff(int gen, Poly value) { diffs_[gen] = std::move(value); }

int Cdga::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

bool Cdga::weighted() const {
  for (auto& g : gens_)
    if (g.weight) return true;
  return false;
}

Poly Cdga::var(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw std::invalid_argument("unknown generator: " + name);
  return var(i);
}

Poly mul(const Poly& a, const Poly& b) { return a * b; }

Poly apply_differential(const Cdga& alg, const Poly& a) { return alg.d(a); }

PresentationReport check_presentation(const Cdga& alg) {
  PresentationReport rep;
  for (int i = 0; i < alg.size(); ++i) {
    const Generator& g = alg.gen(i);
    const Poly& f = alg.diff(i);
    if (f.is_zero()) continue;
    for (auto& [m, c] : f.terms())
      for (auto& [gi, e] : m.factors)
        if (gi >= i) {
          rep.fail("D " + g.name + " is not triangular: uses " +
                   alg.gen(gi).name);
          goto triangular_done;
        }
  triangular_done:
    auto d = f.degree();
    if (!d || *d != g.degree + 1)
      rep.fail("D " + g.name + " has wrong degree (want " +
               std::to_string(g.degree + 1) + ")");
    if (g.weight) {
      auto w = f.weight();
      if (!w || *w != *g.weight)
        rep.fail("D " + g.name + " is not weight-homogeneous of weight " +
                 std::to_string(*g.weight));
    }
  }
  if (rep.pass) {
    for (int i = 0; i < alg.size(); ++i) {
      if (!alg.d(alg.diff(i)).is_zero())
        rep.fail("D^2 " + alg.gen(i).name + " != 0");
    }
  }
  return rep;
}

CdgaMorphism CdgaMorphism::identity(const Cdga* alg) {
  std::vector<Poly> images;
  for (int i = 0; i < alg->size(); ++i) images.push_back(alg->var(i));
  return CdgaMorphism(alg, alg, std::move(images));
}

CdgaMorphism CdgaMorphism::inclusion(const Cdga* src, const Cdga* dst) {
  std::vector<Poly> images;
  for (int i = 0; i < src->size(); ++i)
    images.push_back(dst->var(src->gen(i).name));
  return CdgaMorphism(src, dst, std::move(images));
}

PresentationReport CdgaMorphism::validate() const {
  PresentationReport rep;
  for (int i = 0; i < src_->size(); ++i) {
    const Generator& g = src_->gen(i);
    const Poly& im = images_[i];
    if (im.is_zero()) continue;
    auto d = im.degree();
    if (!d || *d != g.degree) {
      rep.fail("image of " + g.name + " has wrong degree");
    }
  }
  if (!rep.pass) return rep;
  for (int i = 0; i < src_->size(); ++i) {
    Poly lhs = (*this)(src_->diff(i));
    Poly rhs = dst_->d(images_[i]);
    if (!(lhs == rhs))
      rep.fail("chain-map identity fails on generator " + src_->gen(i).name);
  }
  return rep;
}

Poly CdgaMorphism::operator()(const Poly& p) const {
  Poly r(dst_);
  for (auto& [m, c] : p.terms()) {
    Poly term = dst_->constant(c);
    for (auto& [g, e] : m.factors)
      for (int k = 0; k < e; ++k) term = term * images_[g];
    r += term;
  }
  return r;
}

CdgaMorphism algebra_map(const Cdga* src, const Cdga* dst,
                         std::vector<Poly> images) {
  return CdgaMorphism(src, dst, std::move(images));
}

Poly transport(const Poly& p, const Cdga* dst,
               const std::vector<int>& genmap) {
  Poly r(dst);
  for (auto& [m, c] : p.terms()) {
    Poly term = dst->constant(c);
    for (auto& [g, e] : m.factors)
      for (int k = 0; k < e; ++k) term = term * dst->var(genmap[g]);
    r += term;
  }
  return r;
}

CdgaPtr localize(const Cdga& alg, const Poly& f, const std::string& tname,
                 const std::string& xiname) {
  auto d = f.degree();
  if (!f.is_zero() && (!d || *d != 0))
    throw std::invalid_argument("localize: f must have degree 0");
  auto out = Cdga::make();
  std::vector<int> genmap(alg.size());
  for (int i = 0; i < alg.size(); ++i)
    genmap[i] = out->add_generator(alg.gen(i).name, alg.gen(i).degree,
                                   alg.gen(i).weight);
  for (int i = 0; i < alg.size(); ++i)
    out->set_diff(genmap[i], transport(alg.diff(i), out.get(), genmap));
  int t = out->add_generator(tname, 0);
  int xi = out->add_generator(xiname, -1);
  Poly tf = out->var(t) * transport(f, out.get(), genmap);
  out->set_diff(xi, tf - out->one());
  return out;
}

}  // namespace dgsw
