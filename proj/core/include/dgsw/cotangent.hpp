#pragma once

#include "dgsw/cohom.hpp"
#include "dgsw/dgmod.hpp"

namespace dgsw {

// Free module on dz_i with D(dz_i) = -d(Dz_i), plus the universal
// derivation a -> da.
struct CotangentComplex {
  CdgaPtr alg;
  DgModulePtr mod;  // basis dz_i, degree deg z_i

  // Universal derivation A -> L_A.
  ModElement d_of(const Poly& a) const;
};

CotangentComplex cotangent_complex(const CdgaPtr& A);

struct RelativeTriangle {
  DgModulePtr restricted;  // L_B (x) A
  DgModulePtr full;        // L_A
  DgModulePtr relative;    // L_{A/B}
  DgMap incl;              // restricted -> full
  DgMap proj;              // full -> relative
  DgMap cone_to_relative;  // cone(incl) -> relative, a quis
};

// B's generators must be a name-for-name prefix of A's.
RelativeTriangle relative_cotangent_triangle(const CdgaPtr& B,
                                             const CdgaPtr& A);

struct ConnectivityReport {
  bool cond_i = false;        // H^0 epi and H^i(L_{A/B}) = 0, i >= -d+1
  bool cond_ii = false;       // H^i(B)->H^i(A) iso above -d+1, epi at -d+1
  bool agree = false;         // the two sides of the equivalence match
  bool moreover_holds = false;  // dim H^{-d}(cone) = dim H^{-d}(L_{A/B})
  int moreover_degree = 0;    // the degree actually checked
  bool exact_slices = true;
  std::vector<std::string> notes;
};

ConnectivityReport check_connectivity(const CdgaPtr& B, const CdgaPtr& A,
                                      int d, const SliceSpec& spec);

struct FinitePresentationReport {
  bool pass = true;
  std::vector<std::string> notes;
};

// H^0(A) finitely presented (syntactic) and L_A perfect (finite basis).
FinitePresentationReport is_finitely_presented_criterion(const CdgaPtr& A);

}  // namespace dgsw
