#pragma once

#include "dgsw/cohom.hpp"
#include "dgsw/cotangent.hpp"

namespace dgsw {

// The algebra of polynomial differential forms on a presentation: the
// original generators z_i followed by u_i = dz_i at degree deg z_i + 1.
// Wedge degree of a monomial = its polynomial degree in the u's, so
// wedge^r L_A is the u-polydegree-r part and the total de Rham complex
// carries the two anticommuting differentials D (the internal one, as
// the forms algebra's own differential) and d (z_i -> u_i).
struct OmegaModel {
  CdgaPtr base;   // the underlying presentation A
  CdgaPtr forms;  // Omega: z's then u's
  std::vector<int> z, u;
  Derivation d;  // universal derivation, odd
  // Generators with index >= fiber_start are the fiber of a Sym-type
  // presentation; base->size() when no fiber is designated.
  int fiber_start = 0;

  int ngens() const { return static_cast<int>(z.size()); }
  bool is_u(int g) const { return g >= ngens(); }
  // z-index of the generator a forms-generator refers to.
  int gen_of(int g) const { return is_u(g) ? g - ngens() : g; }
  bool is_fiber(int g) const { return gen_of(g) >= fiber_start; }

  Poly D(const Poly& w) const { return forms->d(w); }
  // Lift a polynomial over the base into the forms algebra.
  Poly lift(const Poly& a) const { return transport(a, forms.get(), z); }

  int wedge_degree(const Monomial& m) const;  // u-polydegree
  int fiber_weight(const Monomial& m) const;  // Lie_E eigenvalue
  int fiber_d_count(const Monomial& m) const;  // fiber u-factors only
};
using OmegaModelPtr = std::shared_ptr<OmegaModel>;

OmegaModelPtr make_omega(const CdgaPtr& A, int fiber_start);
inline OmegaModelPtr make_omega(const CdgaPtr& A) {
  return make_omega(A, A->size());
}

// Element of the truncated total de Rham complex prod_{r >= p} wedge^r.
struct DeRhamElement {
  OmegaModelPtr model;
  Poly value;        // mixed wedge degrees allowed
  int p_floor = 0;   // components below this wedge degree are dropped
  int max_wedge = 6; // components above this wedge degree are clipped
  bool clipped = false;

  static DeRhamElement make(const OmegaModelPtr& m, Poly v, int p_floor = 0,
                            int max_wedge = 6);
  bool is_zero() const { return value.is_zero(); }
  Poly component(int r) const;        // wedge-degree-r part
  std::optional<int> degree() const { return value.degree(); }
  DeRhamElement operator+(const DeRhamElement& o) const;
  DeRhamElement operator-(const DeRhamElement& o) const;
  DeRhamElement scale(const Rational& c) const;
  bool operator==(const DeRhamElement& o) const { return value == o.value; }
};

// Vector field of pure degree k: a map L -> A given by its values on the
// dz_i. Contraction extends it to all wedge degrees as a derivation of
// parity k - 1.
struct VectorField {
  OmegaModelPtr model;
  int degree = 0;
  std::vector<Poly> values;  // over the forms algebra, z-part only

  Derivation contraction() const;
};

// The Euler field sum y_i (dy_i)^* of a Sym-type model (values on fiber
// generators only).
VectorField euler_field(const OmegaModelPtr& m);
// A twist xi as a vector field: xi_values[i] is the value on dy_i for
// each fiber generator, given over the base algebra.
VectorField twist_field(const OmegaModelPtr& m,
                        const std::vector<Poly>& xi_values);

DeRhamElement apply_d(const DeRhamElement& w);
DeRhamElement apply_D(const DeRhamElement& w);
DeRhamElement contract(const VectorField& X, const DeRhamElement& w);
// Lie_X = [d, iota_X].
DeRhamElement lie(const VectorField& X, const DeRhamElement& w);

struct OperatorSpec {
  enum Kind { d, D, iota, lie } kind = d;
  std::optional<VectorField> field;  // for iota / lie
};
DeRhamElement apply_operator(const OperatorSpec& op, const DeRhamElement& w);

// Decomposition into Lie_E eigenspaces (fiber weight).
std::map<int, DeRhamElement> weight_decompose(const DeRhamElement& w);

struct FiltrationLabel {
  Monomial term;
  int filt = 0;        // count of fiber d-generators in the term
  int filt_weight = 0; // fiber weight of the term
};
std::vector<FiltrationLabel> filtration_label(const DeRhamElement& w);

// e^xi = sum_k iota_xi^k / k!; always a finite sum since contraction
// lowers wedge degree.
DeRhamElement exp_xi(const VectorField& xi, const DeRhamElement& w);

// --- slice computations on the forms algebra ---

// Truncation of the total complex: cells are forms monomials filtered by
// total degree window, polynomial-degree cap, optional weight cap,
// optional fixed fiber weight, and a wedge-degree range.
struct OmegaSliceSpec {
  SliceSpec base;
  std::optional<int> fiber_weight;
  int min_wedge = 0;
  int max_wedge = 6;
};

struct OmegaSlice {
  OmegaModelPtr model;
  OmegaSliceSpec spec;
  std::map<int, std::vector<Monomial>> cells;  // per total degree
  std::map<int, std::vector<bool>> good;
  std::map<int, QMatrix> dmat;  // good cells of n -> cells of n + 1

  int dim(int degree) const {
    auto it = cells.find(degree);
    return it == cells.end() ? 0 : static_cast<int>(it->second.size());
  }
  std::vector<Rational> coords(const Poly& w, int degree) const;
  Poly element(const std::vector<Rational>& v, int degree) const;
};

// Build the slice for an arbitrary degree-1 operator (e.g. D, d + D).
OmegaSlice build_omega_slice(const OmegaModelPtr& m, const OmegaSliceSpec& spec,
                             const std::function<Poly(const Poly&)>& op);

// Cohomology of the operator at one total degree: dimension plus
// representatives.
struct OmegaCohomEntry {
  int dim = 0;
  std::vector<Poly> representatives;
};
OmegaCohomEntry omega_cohomology(const OmegaSlice& sc, int degree);

// Lemma-2.3-style comparison: the lambda graded piece of
// H^i(F^p total complex) against the lambda piece of
// ker(d : H^{i-p}(wedge^p) -> H^{i-p}(wedge^{p+1})), both truncated.
struct GradedPieceReport {
  int dim_direct = 0;
  int dim_kernel = 0;
  bool agree = false;
};
GradedPieceReport graded_piece_model(const OmegaModelPtr& m, int p, int i,
                                     int lambda, const OmegaSliceSpec& spec);

// Solve (d + D) f = gamma in the truncated total complex; the constant
// term of the wedge-0 component is normalized to zero. On failure the
// certificate holds the class coordinates in the slice.
struct PrimitiveResult {
  bool closed = false;
  std::optional<DeRhamElement> primitive;
  std::vector<Rational> class_coords;
};
PrimitiveResult find_primitive(const DeRhamElement& gamma,
                               const OmegaSliceSpec& spec);

}  // namespace dgsw
