#pragma once

#include "dgsw/derham.hpp"

namespace dgsw {

// Twist datum for the deformed symmetric algebra on a module: a cocycle
// M -> B[1] given by its values on the basis.
struct TwistData {
  CdgaPtr base;
  DgModulePtr mod;           // semifree over base, triangular
  std::vector<Poly> xi;      // xi(e_i) in B, degree deg e_i + 1
  std::vector<std::string> names;  // generator names for the fiber; empty
                                   // means basis names are reused

  PresentationReport validate() const;
};

// B[y_i | D y_i = sum_{j<i} mu_{ji} y_j + xi_i]. Weights are assigned
// (base 0, fiber 1) only when the twist is zero; a nonzero twist breaks
// weight homogeneity by design.
CdgaPtr sym_twisted(const TwistData& t);

// A shifted cotangent bundle (possibly twisted): the total algebra with
// its forms model, the Liouville form and the standard 2-form.
struct ShiftedCotangent {
  CdgaPtr base;        // B
  CdgaPtr total;       // Sym^xi_B(L_B dagger)
  OmegaModelPtr model; // forms on the total algebra, fiber designated
  // fiber_of[i]: generator index in `total` of the conjugate variable of
  // base generator i (fiber order is reversed for triangularity).
  std::vector<int> fiber_of;
  DeRhamElement liouville;  // lambda = sum (-1)^{|z_i|} y_i dz_i
  DeRhamElement omega;      // the standard (twisted) 2-form
  std::vector<Poly> xi;     // twist values per base generator (over B)
};

ShiftedCotangent shifted_cotangent(const CdgaPtr& B, const DualityContext& ctx);

// Standard twisted structure attached to the exact one-form d f: the
// twist values are read off from d f and the 2-form is
// -df + (d + D_A) lambda. f must be homogeneous of degree 1 - d with
// zero constant term and D f = 0.
ShiftedCotangent twisted_standard_form(const CdgaPtr& B,
                                       const DualityContext& ctx,
                                       const Poly& f);

// The pairing map L_A^dagger -> L_A induced by a 2-form: column a is the
// contraction of the form along the a-th coordinate direction.
DgMap two_form_pairing(const OmegaModelPtr& m, const Poly& omega2,
                       const DualityContext& ctx);

struct SymplecticReport {
  bool closed = false;
  bool nondegenerate = false;
  bool symmetric = false;
  bool approximate = false;
  bool pass() const { return closed && nondegenerate && symmetric; }
};

SymplecticReport verify_symplectic(const OmegaModelPtr& m,
                                   const DeRhamElement& omega,
                                   const DualityContext& ctx,
                                   const SliceSpec& spec);

// Re-express a form over another model; genmap sends base-generator
// indices of src to base-generator indices of dst (u's follow along).
Poly transport_forms(const OmegaModelPtr& src, const OmegaModelPtr& dst,
                     const std::vector<int>& genmap, const Poly& w);

}  // namespace dgsw
