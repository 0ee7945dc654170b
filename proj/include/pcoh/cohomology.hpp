#ifndef PCOH_COHOMOLOGY_HPP
#define PCOH_COHOMOLOGY_HPP

// Mod-p cohomology of finite p-groups: dimensions from minimal free
// resolutions over F_p G, and low-degree classes from the normalised bar
// complex.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pcoh/ffmat.hpp"
#include "pcoh/pcgroup.hpp"

namespace pcoh {

struct GradedDims {
  std::vector<std::size_t> dims;  // dims[0] = 1
  bool truncated = false;         // dims stops short of the requested degree
  std::string note;
};

struct MinresOptions {
  /// Largest differential, in matrix entries, the resolution may build.
  std::uint64_t max_matrix_entries = std::uint64_t{1} << 26;
};

/// dim H^i(G; F_p) for i <= kmax as the ranks of a minimal free resolution.
GradedDims minres_dims(const PcGroup &G, std::size_t kmax, const MinresOptions &opts = {});

struct BarOptions {
  /// Cap on the number of free parameters of a cocycle space.
  std::size_t max_params = 8000;
};

/// dim H^i for i <= kmax (kmax <= 3) from the normalised bar complex.
/// Throws CapExceeded when the parameter count is above the cap.
std::vector<std::size_t> bar_dims(const PcGroup &G, std::size_t kmax,
                                  const BarOptions &opts = {});

/// Normalised 1-cochain: values on all elements, zero at the identity.
using Cochain1 = std::vector<std::uint8_t>;

/// Normalised 2-cochain stored as a dense |G| x |G| table.
struct Cocycle2 {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::vector<std::uint8_t> table;

  Cocycle2() = default;
  Cocycle2(std::uint32_t p, std::uint32_t m) : p(p), m(m), table(std::size_t{m} * m, 0) {}
  std::uint32_t operator()(Elem g, Elem h) const { return table[std::size_t{g} * m + h]; }
  void set(Elem g, Elem h, std::uint32_t v) {
    table[std::size_t{g} * m + h] = static_cast<std::uint8_t>(v % p);
  }
};

/// Checks f(g,h) + f(gh,k) = f(h,k) + f(g,hk) and normalisation; exhaustive
/// up to exhaustive_limit elements, seeded random triples above.
bool is_cocycle(const PcGroup &G, const Cocycle2 &f, std::uint32_t exhaustive_limit = 32,
                std::size_t samples = 200000);

/// Low-degree cohomology of one group.
class H2Presentation {
public:
  std::uint32_t p() const { return p_; }
  std::size_t h1_dim() const { return h1_.size(); }
  std::size_t h2_dim() const { return h2_.size(); }
  std::size_t z2_dim() const { return z2_dim_; }
  std::size_t b2_dim() const { return b2_dim_; }
  /// Basis of Hom(G, F_p).
  const std::vector<Cochain1> &h1() const { return h1_; }
  /// Cocycles whose classes form a basis of H^2.
  const std::vector<Cocycle2> &h2() const { return h2_; }

  /// Coordinates of the class of f in the basis h2(); throws if f is not a
  /// cocycle.
  FpVector class_of(const Cocycle2 &f) const;
  bool is_coboundary(const Cocycle2 &f) const { return class_of(f).is_zero(); }

private:
  friend H2Presentation h2_bar_basis(const PcGroup &G, std::uint32_t max_order);
  std::uint32_t p_ = 2;
  std::uint32_t m_ = 1;
  std::vector<Elem> gens_;  // parameter slots (x, s) use these s
  std::vector<Cochain1> h1_;
  std::vector<Cocycle2> h2_;
  std::size_t z2_dim_ = 0;
  std::size_t b2_dim_ = 0;
  std::size_t b2_span_ = 0;  // number of leading B^2 vectors in coords_
  std::vector<FpVector> spanning_;
  std::shared_ptr<SpanCoordinates> coords_;

  FpVector params_of(const Cocycle2 &f) const;
};

/// H^1 and H^2 from the bar complex.  Throws CapExceeded above max_order.
H2Presentation h2_bar_basis(const PcGroup &G, std::uint32_t max_order = 128);

/// (x u y)(g, h) = x(g) y(h)
Cocycle2 cup11(const PcGroup &G, const Cochain1 &x, const Cochain1 &y);
/// Bockstein of a homomorphism: (x~(g) + x~(h) - x~(gh)) / p with x~ the lift
/// to [0, p).
Cocycle2 bockstein1(const PcGroup &G, const Cochain1 &x);
/// Restriction of f to the subgroup A, as a cochain on A's own presentation.
Cocycle2 restrict2(const Cocycle2 &f, const SubgroupPresentation &A);
Cochain1 restrict1(const Cochain1 &x, const SubgroupPresentation &A);

/// B(A) as classes of H^2(A) for elementary abelian A: Bocksteins of a
/// basis of H^1(A).  Throws GroupError when A is not elementary abelian.
struct BocksteinSubspace {
  H2Presentation h2;
  std::vector<FpVector> classes;
  std::size_t dim = 0;
};
BocksteinSubspace bockstein_subspace(const PcGroup &A);

struct OmegaAReport {
  Subgroup A;
  std::size_t rank = 0;
  std::size_t b_dim = 0;        // dim B(A)
  std::size_t res_dim = 0;      // dim res H^2(G) in H^2(A)
  bool contained = false;       // B(A) within the image of restriction
};
struct OmegaReport {
  bool verdict = true;  // evaluated on the first maximal A
  bool all_agree = true;
  std::vector<OmegaAReport> per_A;
};
/// For each maximal elementary abelian A: is every element of B(A) the
/// restriction of a class in H^2(G)?
OmegaReport omega_extendible(const PcGroup &G, std::uint32_t max_order = 128);

struct RelationReport {
  bool verdict = false;
  std::size_t h1 = 0;
  std::size_t h2 = 0;
  std::size_t source_dim = 0;  // dim Sym^2 H^1 (p = 2) or Lambda^2 H^1
  std::size_t kernel_dim = 0;  // degree-2 relations
  std::size_t square_kernel_dim = 0;  // p = 2: relations x.x with x u x ~ 0
};
/// Degree-2 relations of H^*(G) among products of degree-1 classes.
/// p = 2: verdict iff every relation is a square; p odd: iff there are none.
RelationReport powerful_cohom(const PcGroup &G, std::uint32_t max_order = 128);

struct Param2Report {
  bool verdict = false;
  bool no_relations = false;
  std::vector<bool> surjective_per_A;
};
/// Odd p only: degree-2 relations vanish and, for every maximal elementary
/// abelian A, res H^2(G) + (H^1(A))^2 = H^2(A).
Param2Report param2_check(const PcGroup &G, std::uint32_t max_order = 128);
/// The same test at any p; for p = 2 "no relations" becomes "relations are
/// squares".  Reported as data only.
Param2Report param2_analogue(const PcGroup &G, std::uint32_t max_order = 128);

/// dims[i] == binom(d(G) + i - 1, i) for i <= kmax.  False when the
/// resolution is truncated before kmax.
bool abelian_shape_check(const PcGroup &G, std::size_t kmax, const MinresOptions &opts = {});
bool abelian_shape(const GradedDims &dims, std::size_t d);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace pcoh

#endif
