#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgsw/rational.hpp"

namespace dgsw {

class Cdga;

struct Generator {
  std::string name;
  int degree = 0;                // cohomological degree
  std::optional<int> weight;     // optional extra grading, >= 0
  bool odd() const { return (degree & 1) != 0; }
};

// Canonical monomial: factors sorted by generator index, exponents > 0,
// exponent <= 1 for odd generators.
struct Monomial {
  std::vector<std::pair<int, int>> factors;  // (generator index, exponent)

  bool is_unit() const { return factors.empty(); }
  int polydeg() const {
    int s = 0;
    for (auto& [g, e] : factors) s += e;
    return s;
  }
  int exponent(int gen) const {
    for (auto& [g, e] : factors)
      if (g == gen) return e;
    return 0;
  }
  auto operator<=>(const Monomial&) const = default;
};

// Element of the free graded-commutative algebra on the presentation's
// generators, in canonical form (no zero coefficients stored).
class Poly {
 public:
  Poly() : alg_(nullptr) {}
  explicit Poly(const Cdga* alg) : alg_(alg) {}
  Poly(const Cdga* alg, const Rational& c);  // constant

  static Poly generator(const Cdga* alg, int gen);
  static Poly monomial(const Cdga* alg, Monomial m, const Rational& c);

  const Cdga* alg() const { return alg_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Homogeneous cohomological degree; nullopt for zero or mixed.
  std::optional<int> degree() const;
  bool homogeneous() const { return is_zero() || degree().has_value(); }
  // Homogeneous weight; nullopt for zero or mixed (generators without an
  // explicit weight count as weight 0).
  std::optional<int> weight() const;
  int max_polydeg() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;  // Koszul-signed product
  Poly operator*(const Rational& c) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  // Keep only terms selected by the predicate.
  Poly filter(const std::function<bool(const Monomial&)>& keep) const;

  void add_term(const Monomial& m, const Rational& c);

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coefficient(Monomial{}); }

 private:
  const Cdga* alg_;
  std::map<Monomial, Rational> terms_;
};

// A graded derivation of fixed parity, determined by its values on the
// generators and extended by the Leibniz rule
//   X(ab) = X(a) b + (-1)^{p |a|} a X(b).
class Derivation {
 public:
  Derivation() = default;
  Derivation(const Cdga* alg, int parity, std::vector<Poly> values)
      : alg_(alg), parity_(parity & 1), values_(std::move(values)) {}
  Poly operator()(const Poly& p) const;
  int parity() const { return parity_; }

 private:
  const Cdga* alg_ = nullptr;
  int parity_ = 1;
  std::vector<Poly> values_;
};

struct PresentationReport {
  bool pass = true;
  std::vector<std::string> violations;
  void fail(std::string msg) {
    pass = false;
    violations.push_back(std::move(msg));
  }
};

// An ordered cell-attachment presentation k[z_1..z_n | Dz_i = f_i].
// Immutable once generators stop being added; Poly values reference the
// owning Cdga by address, so Cdga objects are heap-allocated and pinned.
class Cdga {
 public:
  static std::shared_ptr<Cdga> make() {
    return std::shared_ptr<Cdga>(new Cdga());
  }

  int add_generator(const std::string& name, int degree,
                    std::optional<int> weight = std::nullopt);
  // The differential value must use only earlier generators (validated by
  // check_presentation, not here, so ill-formed inputs can be reported).
  void set_diff(int gen, Poly value);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int i) const { return gens_[i]; }
  const Poly& diff(int i) const { return diffs_[i]; }
  int find(const std::string& name) const;  // -1 if absent
  bool weighted() const;

  Poly zero() const { return Poly(this); }
  Poly one() const { return Poly(this, Rational(1)); }
  Poly constant(const Rational& c) const { return Poly(this, c); }
  Poly var(int i) const { return Poly::generator(this, i); }
  Poly var(const std::string& name) const;

  // The differential as a derivation (parity 1).
  Derivation differential() const { return Derivation(this, 1, diffs_); }
  Poly d(const Poly& p) const { return differential()(p); }

 private:
  Cdga() = default;
  std::vector<Generator> gens_;
  std::vector<Poly> diffs_;
  std::map<std::string, int> index_;
};
using CdgaPtr = std::shared_ptr<Cdga>;

// --- Module-level operations of the presentation calculus ---

Poly mul(const Poly& a, const Poly& b);
Poly apply_differential(const Cdga& alg, const Poly& a);

// Degree/triangularity/D^2 = 0/weight-homogeneity validation.
PresentationReport check_presentation(const Cdga& alg);

// A validated cdga morphism determined by generator images.
class CdgaMorphism {
 public:
  CdgaMorphism() = default;
  CdgaMorphism(const Cdga* src, const Cdga* dst, std::vector<Poly> images)
      : src_(src), dst_(dst), images_(std::move(images)) {}

  static CdgaMorphism identity(const Cdga* alg);
  // Prefix inclusion: src generators are a prefix of dst's by name.
  static CdgaMorphism inclusion(const Cdga* src, const Cdga* dst);

  PresentationReport validate() const;  // degrees + chain-map property
  Poly operator()(const Poly& p) const;  // pushforward
  const Cdga* src() const { return src_; }
  const Cdga* dst() const { return dst_; }
  const Poly& image(int gen) const { return images_[gen]; }

 private:
  const Cdga* src_ = nullptr;
  const Cdga* dst_ = nullptr;
  std::vector<Poly> images_;
};

CdgaMorphism algebra_map(const Cdga* src, const Cdga* dst,
                         std::vector<Poly> images);

// Re-express a Poly over another algebra; genmap[i] is the destination
// index of source generator i (degrees must agree).
Poly transport(const Poly& p, const Cdga* dst, const std::vector<int>& genmap);

// Zariski localization at a degree-0 element f: adjoin t, xi with
// D xi = t f - 1.
CdgaPtr localize(const Cdga& alg, const Poly& f,
                 const std::string& tname = "t",
                 const std::string& xiname = "xi_loc");

}  // namespace dgsw
