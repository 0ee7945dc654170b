#ifndef PCOH_PCGROUP_HPP
#define PCOH_PCGROUP_HPP

// Finite p-groups given by polycyclic presentations with all relative orders
// p, and the subgroup machinery built on top of them.
//
// Conventions: elements are normal words g_1^{a_1} ... g_n^{a_n} with
// 0 <= a_i < p; [x, y] = x^-1 y^-1 x y.  Generator indices are 0-based in
// the API and 1-based in the JSON file format.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcoh {

class GroupError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a search or enumeration would exceed its configured cap.
class CapExceeded : public GroupError {
public:
  using GroupError::GroupError;
};

using Exponents = std::vector<std::uint8_t>;
using Elem = std::uint32_t;

struct Commutator {
  std::size_t j = 0;  // j > i
  std::size_t i = 0;
  Exponents w;        // [g_j, g_i], supported on positions > j
};

struct Presentation {
  std::string name;
  std::uint32_t p = 2;
  std::size_t ngens = 0;
  std::vector<Exponents> power;  // power[i] = g_i^p, supported on positions > i
  std::vector<Commutator> comm;  // unlisted commutators are trivial
};

struct ValidateOptions {
  std::uint64_t max_order = 512;
  std::uint64_t exhaustive_limit = 64;
  std::size_t sampled_triples = 100000;
  std::uint64_t seed = 1;
};

class PcGroup {
public:
  static constexpr Elem identity = 0;

  /// Checks the presentation and builds the multiplication table.
  /// Throws GroupError("inconsistent presentation ...") with a witness
  /// triple, or "unsupported size".
  static PcGroup validate(Presentation pres, const ValidateOptions &opts = {});

  const std::string &name() const { return pres_.name; }
  std::uint32_t p() const { return pres_.p; }
  std::size_t ngens() const { return pres_.ngens; }
  std::uint32_t order() const { return order_; }
  const Presentation &presentation() const { return pres_; }

  Elem mul(Elem a, Elem b) const { return table_[std::size_t{a} * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem comm(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  /// g^-1 a g
  Elem conj(Elem a, Elem g) const { return mul(mul(inv(g), a), g); }

  Exponents exponents(Elem a) const;
  Elem index(const Exponents &e) const;
  Elem generator(std::size_t i) const;

  /// Product of two normal words by collection from the left.
  Exponents collect(const Exponents &a, const Exponents &b) const;

private:
  Presentation pres_;
  std::uint32_t order_ = 1;
  std::vector<Exponents> comm_words_;  // [g_j, g_i] at j * n + i
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;

  void collect_generator(Exponents &e, std::size_t k) const;
  void collect_word(Exponents &e, const Exponents &w) const;
};

/// An ordered list of group elements closed under multiplication.
struct Subgroup {
  std::vector<Elem> elements;  // sorted, contains the identity
  std::vector<Elem> gens;

  std::size_t order() const { return elements.size(); }
  bool contains(Elem x) const;
  bool operator==(const Subgroup &o) const { return elements == o.elements; }
};

/// log_p of a p-power.
std::size_t log_p(std::uint64_t order, std::uint32_t p);

Subgroup whole_group(const PcGroup &G);
Subgroup trivial_subgroup();
Subgroup subgroup_generated(const PcGroup &G, std::span<const Elem> gens);
/// Subgroup with the given element set; generators chosen greedily.
Subgroup subgroup_from_elements(const PcGroup &G, std::vector<Elem> elements);
/// Smallest subgroup of H containing gens and normalised by H.
Subgroup normal_closure(const PcGroup &G, const Subgroup &H, std::span<const Elem> gens);
Subgroup intersection(const PcGroup &G, const Subgroup &A, const Subgroup &B);
Subgroup join(const PcGroup &G, const Subgroup &A, const Subgroup &B);
bool is_subgroup_of(const Subgroup &A, const Subgroup &B);
/// N normalised by every element of H.
bool is_normal(const PcGroup &G, const Subgroup &N, const Subgroup &H);
bool is_normal(const PcGroup &G, const Subgroup &N);
Subgroup normalizer(const PcGroup &G, const Subgroup &A, const Subgroup &H);

std::vector<std::uint64_t> element_orders(const PcGroup &G);
std::uint64_t element_order(const PcGroup &G, Elem x);

/// Omega_r(H): generated by the elements of H of order at most p^r.
Subgroup omega(const PcGroup &G, std::size_t r, const Subgroup &H);
Subgroup omega(const PcGroup &G, std::size_t r);
/// H^{p^r}: generated by the p^r-th powers of elements of H.
Subgroup agemo(const PcGroup &G, std::size_t r, const Subgroup &H);
Subgroup agemo(const PcGroup &G, std::size_t r);

/// [A, B] for A, B normal in H.
Subgroup commutator_subgroup(const PcGroup &G, const Subgroup &A, const Subgroup &B,
                             const Subgroup &H);
Subgroup center(const PcGroup &G, const Subgroup &H);

struct StandardSeries {
  Subgroup derived;
  Subgroup frattini;
  Subgroup center;
  std::vector<Subgroup> lower_central;  // gamma_1 = H, ..., ending at 1
};
StandardSeries standard_series(const PcGroup &G, const Subgroup &H);
StandardSeries standard_series(const PcGroup &G);

bool is_abelian(const PcGroup &G, const Subgroup &H);
bool is_elementary_abelian(const PcGroup &G, const Subgroup &H);
/// d(H) = log_p |H / Phi(H)|.
std::size_t min_generators(const PcGroup &G, const Subgroup &H);

/// A subgroup or quotient re-presented as a group in its own right.
struct SubgroupPresentation {
  PcGroup group;
  std::vector<Elem> to_parent;  // element of group -> element of G
};
SubgroupPresentation as_group(const PcGroup &G, const Subgroup &H, const std::string &name = "");

struct Quotient {
  PcGroup group;
  std::vector<Elem> projection;  // element of G -> element of G/N
  std::vector<Exponents> generator_images;
};
/// Throws GroupError("not normal") unless N is normal in G.
Quotient quotient(const PcGroup &G, const Subgroup &N, const std::string &name = "");

/// All subgroups of H, ordered by order then element list.
std::vector<Subgroup> subgroup_enumerate(const PcGroup &G, const Subgroup &H,
                                         std::uint64_t max_order = 256);
std::vector<Subgroup> subgroup_enumerate(const PcGroup &G, std::uint64_t max_order = 256);

struct StructureInvariants {
  std::size_t d = 0;
  std::optional<std::size_t> rank;  // nullopt when the enumeration cap is exceeded
  std::size_t nilpotency_class = 0;
  std::size_t coclass = 0;
  std::uint64_t exponent = 1;
};
StructureInvariants structure_invariants(const PcGroup &G, std::uint64_t max_order = 256);
std::size_t subgroup_rank(const PcGroup &G, const Subgroup &H, std::uint64_t max_order = 256);

struct ElementaryAbelianInfo {
  std::vector<Subgroup> maximal;  // maximal under inclusion
  std::size_t a = 0;              // largest rank of any elementary abelian subgroup
};
ElementaryAbelianInfo maximal_elem_ab(const PcGroup &G, const Subgroup &H);
ElementaryAbelianInfo maximal_elem_ab(const PcGroup &G);

// ------------------------------------------------------------ unitriangular

/// r x r upper unitriangular matrix over F_p, row-major.
struct UtMatrix {
  std::size_t r = 0;
  std::vector<std::uint8_t> a;
  bool operator==(const UtMatrix &) const = default;
};

struct UtHom {
  std::vector<UtMatrix> images;  // image of each pc generator
};

struct HomSearchOptions {
  std::uint64_t candidate_cap = std::uint64_t{1} << 24;  // bound on |UT_r|^d(G)
  std::uint64_t node_cap = std::uint64_t{1} << 26;
};

/// Every homomorphism G -> UT_r(F_p), enumerated by the images of the pc
/// generators.  Throws CapExceeded when |UT_r(F_p)|^d(G) is above the cap.
std::vector<UtHom> homs_to_unitriangular(const PcGroup &G, std::size_t r,
                                         const HomSearchOptions &opts = {});
UtMatrix ut_image(const PcGroup &G, const UtHom &hom, Elem x);
Subgroup hom_kernel(const PcGroup &G, const UtHom &hom);

}  // namespace pcoh

#endif
