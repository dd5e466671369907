#pragma once

#include "dgsw/cohom.hpp"
#include "dgsw/dgmod.hpp"

namespace dgsw {

// A self-dual complex: phi is a chain map M-dagger -> M which is a quis
// and satisfies phi-dagger = lambdaP * eta_M o phi.
struct SymmetricComplex {
  DgModulePtr mod;
  DgMap phi;  // dagger(mod) -> mod, shift 0
  DualityContext ctx;
};

struct SymmetricReport {
  bool chain = false;
  bool quis = false;
  bool symmetric = false;
  bool pass() const { return chain && quis && symmetric; }
};

SymmetricReport check_symmetric(const SymmetricComplex& s,
                                const SliceSpec& spec);

// N + N-dagger with the swap pairing; always symmetric and metabolic.
SymmetricComplex hyperbolic(const DgModulePtr& N, const DualityContext& ctx);

// Direct sum of symmetric complexes (block modules, block pairing).
SymmetricComplex direct_sum(const SymmetricComplex& x,
                            const SymmetricComplex& y);

// A Lagrangian presented as the triangle N -> M -> N-dagger: the
// inclusion, its pairing-adjoint projection, a homotopy certifying that
// the composite vanishes (isotropy), and a homotopy relating the
// projection to the dagger of the inclusion through phi (this carries the
// co-isotropic factorization data). Lagrangian-ness itself is the
// exactness of the triangle: the induced map cone(incl) -> N-dagger is a
// quis.
struct LagrangianData {
  DgModulePtr sub;   // N
  DgMap incl;        // a: N -> M, shift 0
  DgMap to_dual;     // b: M -> N-dagger, shift 0
  DgMap isotropy_h;  // h: N -> N-dagger, shift -1, with b o a = [D, h]
  DgMap duality_h;   // H: M-dagger -> N-dagger, shift -1, with
                     //   b o phi - dual_sign * a-dagger = [D, H]
  int dual_sign = 1;
};

struct LagrangianReport {
  bool maps = false;      // degree/chain validation of all pieces
  bool isotropy = false;  // b o a = [D, h]
  bool duality = false;   // b o phi - dual_sign * a-dagger = [D, H]
  bool exact = false;     // cone(incl) -> N-dagger a quis on slices
  bool pass() const { return maps && isotropy && duality && exact; }
};

LagrangianReport check_lagrangian(const SymmetricComplex& s,
                                  const LagrangianData& L,
                                  const SliceSpec& spec);

// Assemble a full Lagrangian witness from a subcomplex inclusion alone:
// the adjoint projection and the duality homotopy are found by
// solve_factor_through against the dagger of the inclusion (both signs
// tried), the isotropy homotopy by solve_homotopy, and the result is
// validated by check_lagrangian. Nullopt when no certificate exists
// within the polynomial-degree ansatz.
std::optional<LagrangianData> complete_lagrangian(const SymmetricComplex& s,
                                                  const DgModulePtr& sub,
                                                  const DgMap& incl,
                                                  const SliceSpec& spec);

// The comparison map cone(incl) -> N-dagger assembled from the isotropy
// homotopy and the adjoint projection; Lagrangian exactness is this map
// being a quis. Nullopt when neither sign convention yields a chain map.
std::optional<DgMap> triangle_map(const SymmetricComplex& s,
                                  const LagrangianData& L);

// Witt-triviality witness: a validated Lagrangian for stabilizer + M,
// where the stabilizer is itself a supplied symmetric complex (typically
// hyperbolic); a rank-0 stabilizer means the Lagrangian is for M itself.
struct SurgeryWitness {
  SymmetricComplex stabilizer;
  LagrangianData lag;
};

struct SurgeryResult {
  LagrangianData lag;      // Lagrangian for M itself
  int iterations = 0;      // surgery steps performed
  bool normalized = false; // H^i(sub-dagger) = 0 for i >= -floor((d-1)/2)
  std::vector<std::string> notes;
};

// Validates the witness, destabilizes to a Lagrangian of M, then kills
// the top cohomology of the dual of the Lagrangian by iterated surgery
// until the connectivity normalization holds.
SurgeryResult surgery_to_lagrangian(const SymmetricComplex& m,
                                    const SurgeryWitness& witness,
                                    const SliceSpec& spec);

// One surgery step along a free module R concentrated in one degree and a
// chain map r: R -> N-dagger (the classes to kill): lift r through the
// exactness triangle cone(incl) -> N-dagger and attach cells to N along
// the shifted-N component of the lift, with all certificates rebuilt by
// the homotopy solvers. Throws std::runtime_error when the classes do not
// lift or no certificate exists within the polynomial-degree ansatz.
LagrangianData surgery_step(const SymmetricComplex& s, const LagrangianData& L,
                            const DgModulePtr& R, const DgMap& r,
                            int max_polydeg);

struct QuadraticSplit {
  std::optional<SymmetricComplex> middle;  // Tor amplitude [-d/2, -d/2]
  SymmetricComplex metabolic;
  bool flagged = false;  // nonzero middle part in a shift where it must vanish
  std::vector<std::string> notes;
};

// Block decomposition along coupling components: components concentrated
// in the middle degree -d/2 with no isotropic half-rank subset form the
// quadratic factor; everything else is returned as the metabolic factor.
QuadraticSplit split_off_quadratic(const SymmetricComplex& s,
                                   const SliceSpec& spec);

}  // namespace dgsw
