#include "dgsw/dgmod.hpp"

#include <algorithm>
#include <map>

#include "dgsw/linalg.hpp"

namespace dgsw {

namespace {

// Scale each homogeneous term of p by (-1)^{deg term} (Koszul sign of a
// left coefficient passing the differential).
Poly koszul_sign(const Poly& p) {
  Poly r(p.alg());
  for (auto& [m, c] : p.terms()) {
    int deg = Poly::monomial(p.alg(), m, 1).degree().value_or(0);
    r.add_term(m, (deg & 1) ? -c : c);
  }
  return r;
}

// Scale each term by (-1)^{s (1 + deg term)} (tensoring with k[s]).
Poly shift_sign(const Poly& p, int s) {
  if ((s & 1) == 0) return p;
  Poly r(p.alg());
  for (auto& [m, c] : p.terms()) {
    int deg = Poly::monomial(p.alg(), m, 1).degree().value_or(0);
    r.add_term(m, (deg & 1) ? c : -c);
  }
  return r;
}

}  // namespace

std::vector<Poly> DgModule::d(const std::vector<Poly>& coef) const {
  std::vector<Poly> out(rank(), Poly(alg()));
  for (int i = 0; i < rank(); ++i) out[i] = base_->d(coef[i]);
  for (int j = 0; j < rank(); ++j) {
    if (coef[j].is_zero()) continue;
    Poly signed_coef = koszul_sign(coef[j]);
    for (int i = 0; i < rank(); ++i) {
      if (diff_[i][j].is_zero()) continue;
      out[i] += signed_coef * diff_[i][j];
    }
  }
  return out;
}

PresentationReport DgModule::validate() const {
  PresentationReport rep;
  for (int j = 0; j < rank(); ++j)
    for (int i = 0; i < rank(); ++i) {
      const Poly& e = diff_[i][j];
      if (e.is_zero()) continue;
      auto deg = e.degree();
      int want = basis_[j].degree + 1 - basis_[i].degree;
      if (!deg || *deg != want)
        rep.fail("diff entry (" + basis_[i].name + ", " + basis_[j].name +
                 ") has wrong degree (want " + std::to_string(want) + ")");
    }
  if (!rep.pass) return rep;
  for (int j = 0; j < rank(); ++j)
    for (int k = 0; k < rank(); ++k) {
      Poly acc = base_->d(diff_[k][j]);
      for (int i = 0; i < rank(); ++i) {
        if (diff_[i][j].is_zero() || diff_[k][i].is_zero()) continue;
        acc += koszul_sign(diff_[i][j]) * diff_[k][i];
      }
      if (!acc.is_zero())
        rep.fail("D^2 != 0 at (" + basis_[k].name + ", " + basis_[j].name +
                 ")");
    }
  return rep;
}

DgMap DgMap::identity(const DgModulePtr& m) {
  DgMap f(m, m, 0);
  for (int i = 0; i < m->rank(); ++i) f.set_entry(i, i, m->alg()->one());
  return f;
}

std::vector<Poly> DgMap::apply(const std::vector<Poly>& coef) const {
  std::vector<Poly> out(dst_->rank(), Poly(dst_->alg()));
  for (int j = 0; j < src_->rank(); ++j) {
    if (coef[j].is_zero()) continue;
    Poly a = (shift_ & 1) ? koszul_sign(coef[j]) : coef[j];
    for (int i = 0; i < dst_->rank(); ++i) {
      if (mat_[i][j].is_zero()) continue;
      out[i] += a * mat_[i][j];
    }
  }
  return out;
}

DgMap DgMap::compose(const DgMap& inner) const {
  DgMap out(inner.src_, dst_, shift_ + inner.shift_);
  for (int j = 0; j < inner.src_->rank(); ++j) {
    std::vector<Poly> col(inner.dst_->rank(), Poly(inner.dst_->alg()));
    for (int i = 0; i < inner.dst_->rank(); ++i) col[i] = inner.mat_[i][j];
    auto res = apply(col);
    for (int i = 0; i < dst_->rank(); ++i) out.set_entry(i, j, res[i]);
  }
  return out;
}

DgMap DgMap::operator+(const DgMap& o) const {
  DgMap out(src_, dst_, shift_);
  for (int i = 0; i < dst_->rank(); ++i)
    for (int j = 0; j < src_->rank(); ++j)
      out.set_entry(i, j, mat_[i][j] + o.mat_[i][j]);
  return out;
}

DgMap DgMap::operator-(const DgMap& o) const {
  return *this + o.scale(Rational(-1));
}

DgMap DgMap::scale(const Rational& c) const {
  DgMap out(src_, dst_, shift_);
  for (int i = 0; i < dst_->rank(); ++i)
    for (int j = 0; j < src_->rank(); ++j)
      out.set_entry(i, j, mat_[i][j] * c);
  return out;
}

bool DgMap::entries_equal(const DgMap& o) const {
  if (dst_->rank() != o.dst_->rank() || src_->rank() != o.src_->rank())
    return false;
  for (int i = 0; i < dst_->rank(); ++i)
    for (int j = 0; j < src_->rank(); ++j)
      if (!(mat_[i][j] == o.mat_[i][j])) return false;
  return true;
}

PresentationReport DgMap::validate() const {
  PresentationReport rep;
  for (int i = 0; i < dst_->rank(); ++i)
    for (int j = 0; j < src_->rank(); ++j) {
      const Poly& e = mat_[i][j];
      if (e.is_zero()) continue;
      auto deg = e.degree();
      int want = src_->basis(j).degree + shift_ - dst_->basis(i).degree;
      if (!deg || *deg != want)
        rep.fail("map entry (" + dst_->basis(i).name + ", " +
                 src_->basis(j).name + ") has wrong degree");
    }
  if (!rep.pass) return rep;
  int sgn = (shift_ & 1) ? -1 : 1;
  for (int j = 0; j < src_->rank(); ++j) {
    std::vector<Poly> ej(src_->rank(), Poly(src_->alg()));
    ej[j] = src_->alg()->one();
    auto lhs = dst_->d(apply(ej));
    auto rhs = apply(src_->d(ej));
    for (int i = 0; i < dst_->rank(); ++i)
      if (!(lhs[i] == rhs[i] * Rational(sgn))) {
        rep.fail("chain identity fails on column " + src_->basis(j).name);
        break;
      }
  }
  return rep;
}

DgModulePtr shift(const DgModulePtr& m, int s) {
  std::vector<BasisElement> basis;
  for (int i = 0; i < m->rank(); ++i) {
    BasisElement b = m->basis(i);
    b.degree -= s;
    basis.push_back(std::move(b));
  }
  auto out = DgModule::make(m->base(), std::move(basis));
  for (int i = 0; i < m->rank(); ++i)
    for (int j = 0; j < m->rank(); ++j)
      out->set_diff(i, j, shift_sign(m->diff(i, j), s));
  return out;
}

ConeResult cone(const DgMap& phi) {
  if (phi.shift() != 0)
    throw std::invalid_argument("cone: map must have shift 0");
  const DgModulePtr& M = phi.src();
  const DgModulePtr& N = phi.dst();
  int rm = M->rank(), rn = N->rank();
  std::vector<BasisElement> basis;
  for (int i = 0; i < rm; ++i) {
    BasisElement b = M->basis(i);
    b.name += "'";
    b.degree -= 1;
    basis.push_back(std::move(b));
  }
  for (int i = 0; i < rn; ++i) basis.push_back(N->basis(i));
  auto C = DgModule::make(M->base(), std::move(basis));
  for (int i = 0; i < rm; ++i)
    for (int j = 0; j < rm; ++j)
      C->set_diff(i, j, shift_sign(M->diff(i, j), 1));
  for (int i = 0; i < rn; ++i)
    for (int j = 0; j < rm; ++j) C->set_diff(rm + i, j, phi.entry(i, j));
  for (int i = 0; i < rn; ++i)
    for (int j = 0; j < rn; ++j) C->set_diff(rm + i, rm + j, N->diff(i, j));

  ConeResult res;
  res.cone = C;
  res.from_target = DgMap(N, C, 0);
  for (int i = 0; i < rn; ++i)
    res.from_target.set_entry(rm + i, i, N->alg()->one());
  auto M1 = shift(M, 1);
  res.to_shifted_source = DgMap(C, M1, 0);
  for (int i = 0; i < rm; ++i)
    res.to_shifted_source.set_entry(i, i, M->alg()->one());
  res.cone = C;
  return res;
}

namespace {

DgModule dagger_impl(const DgModule& m, int d, const std::string& suffix) {
  std::vector<BasisElement> basis;
  for (int i = 0; i < m.rank(); ++i) {
    BasisElement b;
    b.name = m.basis(i).name + suffix;
    b.degree = -d - m.basis(i).degree;
    basis.push_back(std::move(b));
  }
  DgModule out(m.base(), std::move(basis));
  for (int i = 0; i < m.rank(); ++i)
    for (int j = 0; j < m.rank(); ++j) {
      const Poly& e = m.diff(j, i);  // e_j-coefficient of D(e_i)
      if (e.is_zero()) continue;
      int degdual_j = -d - m.basis(j).degree;
      int dege = e.degree().value_or(0);
      int expo = degdual_j * (1 + dege);
      Rational sgn = (expo & 1) ? 1 : -1;  // overall minus times (-1)^expo
      out.set_diff(i, j, e * sgn);
    }
  return out;
}

}  // namespace

DgModulePtr dagger(const DgModulePtr& m, const DualityContext& ctx) {
  return std::make_shared<DgModule>(dagger_impl(*m, ctx.d, "_dag"));
}

DgMap dagger_map(const DgMap& phi, const DualityContext& ctx) {
  if (phi.shift() != 0)
    throw std::invalid_argument("dagger_map: shift-0 maps only");
  auto Ndag = dagger(phi.dst(), ctx);
  auto Mdag = dagger(phi.src(), ctx);
  DgMap out(Ndag, Mdag, 0);
  for (int k = 0; k < phi.src()->rank(); ++k)
    for (int j = 0; j < phi.dst()->rank(); ++j) {
      const Poly& e = phi.entry(j, k);
      if (e.is_zero()) continue;
      int degdual_j = Ndag->basis(j).degree;
      int expo = degdual_j * e.degree().value_or(0);
      out.set_entry(k, j, (expo & 1) ? e * Rational(-1) : e);
    }
  return out;
}

DgMap double_dual_map(const DgModulePtr& m, const DualityContext& ctx) {
  auto mdd = dagger(dagger(m, ctx), ctx);
  DgMap out(m, mdd, 0);
  for (int i = 0; i < m->rank(); ++i) {
    int expo = m->basis(i).degree * (ctx.d + 1);
    out.set_entry(i, i, m->alg()->constant((expo & 1) ? -1 : 1));
  }
  return out;
}

namespace {

void enumerate_tuples(int rank, int p, const std::function<bool(int)>& odd_in_w,
                      std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  int start = cur.empty() ? 0 : cur.back();
  for (int i = start; i < rank; ++i) {
    if (!cur.empty() && cur.back() == i && odd_in_w(i)) continue;
    cur.push_back(i);
    enumerate_tuples(rank, p, odd_in_w, cur, out);
    cur.pop_back();
  }
}

}  // namespace

DgModulePtr wedge_power(const DgModulePtr& m, int p) {
  if (p < 0) throw std::invalid_argument("wedge_power: p >= 0 required");
  const Cdga* B = m->alg();
  // Auxiliary algebra: base generators, then one generator per basis
  // element with degree shifted by +1 (exterior-parity convention).
  auto W = Cdga::make();
  std::vector<int> genmap(B->size());
  for (int i = 0; i < B->size(); ++i)
    genmap[i] = W->add_generator(B->gen(i).name, B->gen(i).degree,
                                 B->gen(i).weight);
  std::vector<int> tgen(m->rank());
  for (int i = 0; i < m->rank(); ++i)
    tgen[i] = W->add_generator("~" + m->basis(i).name,
                               m->basis(i).degree + 1, m->basis(i).weight);
  for (int i = 0; i < B->size(); ++i)
    W->set_diff(genmap[i], transport(B->diff(i), W.get(), genmap));
  for (int j = 0; j < m->rank(); ++j) {
    Poly val(W.get());
    for (int i = 0; i < m->rank(); ++i) {
      const Poly& e = m->diff(i, j);
      if (e.is_zero()) continue;
      Poly coef = shift_sign(transport(e, W.get(), genmap), 1);
      val += coef * W->var(tgen[i]);
    }
    W->set_diff(tgen[j], val);
  }

  auto odd_in_w = [&](int i) { return W->gen(tgen[i]).odd(); };
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur;
  enumerate_tuples(m->rank(), p, odd_in_w, cur, tuples);

  std::vector<BasisElement> basis;
  std::map<Monomial, int> index;  // t-monomial in W -> tuple index
  std::vector<Monomial> tmonos;
  for (auto& T : tuples) {
    BasisElement b;
    int deg = 0;
    bool wall = true;
    int wsum = 0;
    Monomial tm;
    for (int idx : T) {
      if (!b.name.empty()) b.name += "^";
      b.name += m->basis(idx).name;
      deg += m->basis(idx).degree;
      if (m->basis(idx).weight)
        wsum += *m->basis(idx).weight;
      else
        wall = false;
      if (!tm.factors.empty() && tm.factors.back().first == tgen[idx])
        tm.factors.back().second += 1;
      else
        tm.factors.emplace_back(tgen[idx], 1);
    }
    if (p == 0) b.name = "1";
    b.degree = deg;
    if (wall && m->rank() > 0) b.weight = wsum;
    basis.push_back(std::move(b));
    index[tm] = static_cast<int>(tmonos.size());
    tmonos.push_back(std::move(tm));
  }

  auto out = DgModule::make(m->base(), std::move(basis));
  std::vector<int> backmap(W->size(), -1);
  for (int i = 0; i < B->size(); ++i) backmap[genmap[i]] = i;
  for (std::size_t j = 0; j < tmonos.size(); ++j) {
    Poly dj = W->d(Poly::monomial(W.get(), tmonos[j], 1));
    for (auto& [mono, c] : dj.terms()) {
      Monomial basepart, tpart;
      for (auto& [g, e] : mono.factors) {
        if (backmap[g] >= 0)
          basepart.factors.emplace_back(backmap[g], e);
        else
          tpart.factors.emplace_back(g, e);
      }
      auto it = index.find(tpart);
      if (it == index.end())
        throw std::logic_error("wedge_power: inadmissible target tuple");
      Poly cur_entry = out->diff(it->second, static_cast<int>(j));
      cur_entry.add_term(basepart, c);
      out->set_diff(it->second, static_cast<int>(j), std::move(cur_entry));
    }
  }
  return out;
}

DgModulePtr base_change(const DgModulePtr& m, const CdgaMorphism& f,
                        const CdgaPtr& target) {
  std::vector<BasisElement> basis;
  for (int i = 0; i < m->rank(); ++i) basis.push_back(m->basis(i));
  auto out = DgModule::make(target, std::move(basis));
  for (int i = 0; i < m->rank(); ++i)
    for (int j = 0; j < m->rank(); ++j) {
      if (m->diff(i, j).is_zero()) continue;
      out->set_diff(i, j, f(m->diff(i, j)));
    }
  return out;
}

DgMap base_change_map(const DgMap& phi, const CdgaMorphism& f,
                      const DgModulePtr& src_bc, const DgModulePtr& dst_bc) {
  DgMap out(src_bc, dst_bc, phi.shift());
  for (int i = 0; i < dst_bc->rank(); ++i)
    for (int j = 0; j < src_bc->rank(); ++j) {
      if (phi.entry(i, j).is_zero()) continue;
      out.set_entry(i, j, f(phi.entry(i, j)));
    }
  return out;
}

namespace {

Rational evaluate_at(const Poly& p, const std::vector<Rational>& point) {
  const Cdga* alg = p.alg();
  Rational total = 0;
  for (auto& [m, c] : p.terms()) {
    Rational v = c;
    bool ok = true;
    for (auto& [g, e] : m.factors) {
      if (alg->gen(g).degree != 0) {
        ok = false;
        break;
      }
      for (int k = 0; k < e; ++k) v *= point[g];
      if (v == 0) break;
    }
    if (ok) total += v;
  }
  return total;
}

std::optional<std::pair<int, int>> probe_amplitude(
    const DgModule& m, const std::vector<Rational>& point) {
  // Scalar complex: group basis by degree, rank bookkeeping per degree.
  std::map<int, std::vector<int>> by_degree;
  for (int i = 0; i < m.rank(); ++i)
    by_degree[m.basis(i).degree].push_back(i);
  std::map<int, std::size_t> rank_from;  // degree n -> rank(D_n)
  for (auto& [n, cols] : by_degree) {
    auto it = by_degree.find(n + 1);
    if (it == by_degree.end()) {
      rank_from[n] = 0;
      continue;
    }
    QMatrix mat(it->second.size(), cols.size());
    for (std::size_t r = 0; r < it->second.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        mat.at(r, c) = evaluate_at(m.diff(it->second[r], cols[c]), point);
    rank_from[n] = mat.rank();
  }
  std::optional<std::pair<int, int>> range;
  for (auto& [n, cols] : by_degree) {
    std::size_t rk_out = rank_from[n];
    std::size_t rk_in = rank_from.count(n - 1) ? rank_from[n - 1] : 0;
    if (cols.size() > rk_out + rk_in) {
      if (!range)
        range = {n, n};
      else
        range = {std::min(range->first, n), std::max(range->second, n)};
    }
  }
  return range;
}

std::optional<std::pair<int, int>> amplitude_union(
    std::optional<std::pair<int, int>> a,
    std::optional<std::pair<int, int>> b) {
  if (!a) return b;
  if (!b) return a;
  return std::make_pair(std::min(a->first, b->first),
                        std::max(a->second, b->second));
}

}  // namespace

std::optional<std::pair<int, int>> tor_amplitude(const DgModule& m) {
  const Cdga* alg = m.alg();
  std::vector<Rational> origin(alg->size(), Rational(0));
  std::vector<Rational> generic(alg->size());
  for (int i = 0; i < alg->size(); ++i)
    generic[i] = Rational(2 * i + 3, 2);
  return amplitude_union(probe_amplitude(m, origin),
                         probe_amplitude(m, generic));
}

std::optional<std::pair<int, int>> tor_amplitude_dual(const DgModule& m) {
  return tor_amplitude(dagger_impl(m, 0, "_star"));
}

DgModulePtr free_cover(const CdgaPtr& alg) {
  return DgModule::make(alg, {BasisElement{"1", 0, std::nullopt}});
}

}  // namespace dgsw
