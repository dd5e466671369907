#pragma once

#include "dgsw/dgmod.hpp"
#include "dgsw/linalg.hpp"

namespace dgsw {

// One cochain degree of a truncated slice: cells are (monomial, basis
// index) pairs. A cell is "good" when its differential stays inside the
// enumerated window; in exact (weight-graded) slices every cell is good.
struct SliceComplex {
  DgModulePtr mod;
  SliceSpec spec;
  std::optional<int> weight;  // fixed weight when slicing is by weight
  bool exact = false;

  std::map<int, std::vector<std::pair<Monomial, int>>> cells;  // per degree
  std::map<int, std::vector<bool>> good;
  std::map<int, QMatrix> dmat;  // degree n: good cells of n -> cells of n+1

  int dim(int degree) const {
    auto it = cells.find(degree);
    return it == cells.end() ? 0 : static_cast<int>(it->second.size());
  }
  std::vector<Rational> coords(const ModElement& e, int degree) const;
  ModElement element(const std::vector<Rational>& v, int degree) const;
};

SliceComplex build_slice(const DgModulePtr& mod, const SliceSpec& spec,
                         std::optional<int> weight);

// Closed vectors at the given degree (full-coordinate), restricted to
// cells whose differential stays in the window.
std::vector<std::vector<Rational>> slice_kernel(const SliceComplex& sc,
                                                int degree);
// Boundary vectors landing at the given degree.
std::vector<std::vector<Rational>> slice_image(const SliceComplex& sc,
                                               int degree);

// Whether weight slicing applies (both gradings present and homogeneous).
bool weight_sliceable(const DgModulePtr& mod, const SliceSpec& spec);

struct CohomEntry {
  int degree = 0;
  std::optional<int> weight;
  int dim = 0;
  bool exact = false;
  std::vector<ModElement> representatives;
};

struct CohomologyReport {
  bool exact = true;
  std::vector<CohomEntry> entries;

  int dim(int degree, std::optional<int> weight = std::nullopt) const {
    int total = 0;
    for (auto& e : entries)
      if (e.degree == degree && (!weight || e.weight == weight))
        total += e.dim;
    return total;
  }
};

// Cohomology of a module (use free_cover to treat an algebra). When the
// spec carries max_weight and both module and base are weight-graded with
// a weight-homogeneous differential, computes exact weight summands
// 0..max_weight; otherwise one approximate polynomial-degree slice.
CohomologyReport cohomology(const DgModulePtr& mod, const SliceSpec& spec);
CohomologyReport cohomology(const CdgaPtr& alg, const SliceSpec& spec);

struct BoundaryResult {
  bool closed = false;
  std::optional<ModElement> primitive;
  // When closed but not a boundary: coordinates of the cohomology class
  // against the slice cell basis in the target degree.
  std::vector<Rational> class_coords;
};

BoundaryResult solve_boundary(const DgModulePtr& mod, const ModElement& target,
                              const SliceSpec& spec);
BoundaryResult solve_boundary(const CdgaPtr& alg, const Poly& target,
                              const SliceSpec& spec);

// Graded commutator [D, h] = D o h - (-1)^shift h o D as a map of
// shift + 1; a homotopy certificate for a shift-0 chain map delta is a
// shift -1 map h with delta = [D, h].
DgMap d_commutator(const DgMap& h);

// Solve delta = [D, h] for h of shift delta.shift() - 1, with entries of
// polynomial degree at most max_polydeg. Exact linear algebra over the
// monomial ansatz; nullopt when no such homotopy exists in the ansatz.
std::optional<DgMap> solve_homotopy(const DgMap& delta, int max_polydeg);

// Factor a chain map t: P -> T through a chain map phi: P -> Q up to
// homotopy: find a chain map X: Q -> T and a shift -1 homotopy H: P -> T
// with X o phi - t = [D, H]. Exact linear algebra over the monomial
// ansatz; nullopt when no factorization exists within it.
std::optional<std::pair<DgMap, DgMap>> solve_factor_through(
    const DgMap& phi, const DgMap& t, int max_polydeg);

// Lift a chain map t: R -> T through a chain map g: C -> T up to
// homotopy: find a chain map X: R -> C and a shift -1 homotopy H: R -> T
// with g o X - t = [D, H]. Same solver machinery as solve_factor_through.
std::optional<std::pair<DgMap, DgMap>> solve_lift_through(
    const DgMap& g, const DgMap& t, int max_polydeg);

// Quasi-isomorphism test on slices: the cone has zero cohomology in the
// window. Only meaningful within the truncation.
bool is_quis(const DgMap& phi, const SliceSpec& spec);

// Contractibility of a module on slices.
bool is_contractible(const DgModulePtr& mod, const SliceSpec& spec);

// Lift a quis along base change (H^0-iso hypothesis checked on slices):
// given f: B -> A, modules M, N over B and a quis phi between their base
// changes over A, produce a chain map psi: M -> N over B whose base change
// is chain homotopic to phi within the truncation, and which is a quis.
std::optional<DgMap> lift_quis(const CdgaMorphism& f, const DgModulePtr& M,
                               const DgModulePtr& N, const DgMap& phi,
                               const SliceSpec& spec);

}  // namespace dgsw
