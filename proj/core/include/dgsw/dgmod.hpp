#pragma once

#include "dgsw/gca.hpp"

namespace dgsw {

struct BasisElement {
  std::string name;
  int degree = 0;
  std::optional<int> weight;
  bool odd() const { return (degree & 1) != 0; }
};

// Truncation parameters for slice-based computations. When max_weight is
// set and the differential is weight-homogeneous, slices are exact
// summands; the polynomial-degree cap alone is only an approximation.
struct SliceSpec {
  int deg_min = -4;
  int deg_max = 1;
  int max_polydeg = 6;
  std::optional<int> max_weight;
};

class DgModule;
using DgModulePtr = std::shared_ptr<DgModule>;

// Finite semifree dg-module over a Cdga. Coefficients act on the left;
// diff(i, j) is the coefficient of e_i in D(e_j), so
//   D(sum a_j e_j) = sum_j D(a_j) e_j + (-1)^{|a_j|} a_j sum_i diff(i,j) e_i.
class DgModule {
 public:
  DgModule() = default;
  DgModule(CdgaPtr base, std::vector<BasisElement> basis)
      : base_(std::move(base)),
        basis_(std::move(basis)),
        diff_(basis_.size(), std::vector<Poly>(basis_.size())) {
    for (auto& row : diff_)
      for (auto& p : row) p = Poly(base_.get());
  }
  static DgModulePtr make(CdgaPtr base, std::vector<BasisElement> basis) {
    return std::make_shared<DgModule>(std::move(base), std::move(basis));
  }

  const CdgaPtr& base() const { return base_; }
  const Cdga* alg() const { return base_.get(); }
  int rank() const { return static_cast<int>(basis_.size()); }
  const BasisElement& basis(int i) const { return basis_[i]; }
  int find(const std::string& name) const {
    for (int i = 0; i < rank(); ++i)
      if (basis_[i].name == name) return i;
    return -1;
  }
  bool weighted() const {
    for (auto& b : basis_)
      if (b.weight) return true;
    return false;
  }

  const Poly& diff(int i, int j) const { return diff_[i][j]; }
  void set_diff(int i, int j, Poly value) { diff_[i][j] = std::move(value); }

  // Differential of an element given by its coefficient vector.
  std::vector<Poly> d(const std::vector<Poly>& coef) const;

  // Degree bookkeeping and D^2 = 0 as a matrix identity.
  PresentationReport validate() const;

 private:
  CdgaPtr base_;
  std::vector<BasisElement> basis_;
  std::vector<std::vector<Poly>> diff_;  // diff_[i][j]: e_i-coeff of D e_j
};

// Morphism of dg-modules of pure degree `shift`; entry(i, j) is the
// coefficient of target e_i in phi(source e_j). Chain identity:
//   D_dst(phi(e)) = (-1)^shift phi(D_src(e)).
class DgMap {
 public:
  DgMap() = default;
  DgMap(DgModulePtr src, DgModulePtr dst, int shift)
      : src_(std::move(src)),
        dst_(std::move(dst)),
        shift_(shift),
        mat_(dst_->rank(), std::vector<Poly>(src_->rank())) {
    for (auto& row : mat_)
      for (auto& p : row) p = Poly(dst_->alg());
  }
  static DgMap identity(const DgModulePtr& m);

  const DgModulePtr& src() const { return src_; }
  const DgModulePtr& dst() const { return dst_; }
  int shift() const { return shift_; }
  const Poly& entry(int i, int j) const { return mat_[i][j]; }
  void set_entry(int i, int j, Poly value) { mat_[i][j] = std::move(value); }

  std::vector<Poly> apply(const std::vector<Poly>& coef) const;
  DgMap compose(const DgMap& inner) const;  // this after inner
  DgMap operator+(const DgMap& o) const;
  DgMap operator-(const DgMap& o) const;
  DgMap scale(const Rational& c) const;
  bool entries_equal(const DgMap& o) const;

  PresentationReport validate() const;  // degrees + chain identity

 private:
  DgModulePtr src_, dst_;
  int shift_ = 0;
  std::vector<std::vector<Poly>> mat_;
};

// Element of a DgModule as a coefficient vector over the base.
struct ModElement {
  DgModulePtr mod;
  std::vector<Poly> coef;

  static ModElement zero(const DgModulePtr& m) {
    return {m, std::vector<Poly>(m->rank(), Poly(m->alg()))};
  }
  bool is_zero() const {
    for (auto& p : coef)
      if (!p.is_zero()) return false;
    return true;
  }
  ModElement d() const { return {mod, mod->d(coef)}; }
  ModElement operator+(const ModElement& o) const {
    ModElement r = *this;
    for (std::size_t i = 0; i < coef.size(); ++i) r.coef[i] += o.coef[i];
    return r;
  }
  ModElement operator-(const ModElement& o) const {
    ModElement r = *this;
    for (std::size_t i = 0; i < coef.size(); ++i) r.coef[i] -= o.coef[i];
    return r;
  }
  ModElement scale(const Rational& c) const {
    ModElement r = *this;
    for (auto& p : r.coef) p = p * c;
    return r;
  }
  bool operator==(const ModElement& o) const {
    for (std::size_t i = 0; i < coef.size(); ++i)
      if (!(coef[i] == o.coef[i])) return false;
    return true;
  }
  // Homogeneous total degree (coefficient degree + basis degree).
  std::optional<int> degree() const {
    std::optional<int> d;
    for (std::size_t i = 0; i < coef.size(); ++i) {
      if (coef[i].is_zero()) continue;
      auto cd = coef[i].degree();
      if (!cd) return std::nullopt;
      int total = *cd + mod->basis(static_cast<int>(i)).degree;
      if (d && *d != total) return std::nullopt;
      d = total;
    }
    return d;
  }
};

// The base algebra as the free rank-1 module over itself.
DgModulePtr free_cover(const CdgaPtr& alg);

// d >= 1 and the symmetry sign lambdaP fixed by calibrate().
struct DualityContext {
  int d = 1;
  int lambdaP = 1;
};

struct ConeResult {
  DgModulePtr cone;
  DgMap from_target;       // N -> cone, shift 0
  DgMap to_shifted_source;  // cone -> M[1], shift 0
};

// Shift: basis degree m becomes m - s; differential is scaled by (-1)^s.
DgModulePtr shift(const DgModulePtr& m, int s);

// Mapping cone of a shift-0 map.
ConeResult cone(const DgMap& phi);

// P-twisted dual for P = k[-d]: basis degree m becomes -d - m;
// differential entries are the signed transpose
//   diff'(i, j) = -(-1)^{|e_j'| (1 + |diff(j, i)|)} diff(j, i).
DgModulePtr dagger(const DgModulePtr& m, const DualityContext& ctx);

// Dual of a shift-0 map: dagger_map(phi): dst' -> src'.
DgMap dagger_map(const DgMap& phi, const DualityContext& ctx);

// Natural double-dual identification M -> (M')'; diagonal with signs
// (-1)^{|e_i| |e_i'|}.
DgMap double_dual_map(const DgModulePtr& m, const DualityContext& ctx);

// p-th wedge power: basis indexed by admissible sorted p-tuples (strictly
// increasing at even-degree elements, repeats allowed at odd-degree ones),
// differential extended as a derivation in the shifted-parity convention.
DgModulePtr wedge_power(const DgModulePtr& m, int p);

// Base change along an algebra morphism with src = m's base.
DgModulePtr base_change(const DgModulePtr& m, const CdgaMorphism& f,
                        const CdgaPtr& target);
DgMap base_change_map(const DgMap& phi, const CdgaMorphism& f,
                      const DgModulePtr& src_bc, const DgModulePtr& dst_bc);

// Tor amplitude by residue-field probes: evaluate the differential at the
// origin and at one fixed rational point of the degree-0 generators, take
// the union of the degree ranges with nonzero homology. nullopt = zero
// module at both probes.
std::optional<std::pair<int, int>> tor_amplitude(const DgModule& m);

// Untwisted dual amplitude helper used by the duality property test.
std::optional<std::pair<int, int>> tor_amplitude_dual(const DgModule& m);

// Determines lambdaP by building the standard 2-form pairing on the
// d-shifted cotangent module of k[x] and testing which sign makes it
// symmetric. Implemented with the de Rham machinery.
DualityContext calibrate(int d);

}  // namespace dgsw
