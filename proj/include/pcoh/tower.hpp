#ifndef PCOH_TOWER_HPP
#define PCOH_TOWER_HPP

// Powerful and p-central predicates and the characteristic tower V >= H >= N
// of a finite p-group.

#include <cstddef>
#include <optional>
#include <string>

#include "json.hpp"
#include "pcoh/pcgroup.hpp"

namespace pcoh {

/// [H,H] <= H^p for odd p, [H,H] <= H^4 for p = 2.
bool is_powerful(const PcGroup &G, const Subgroup &H);
bool is_powerful(const PcGroup &G);

/// Omega_1(H) lies in the centre of H.
bool is_p_central(const PcGroup &G, const Subgroup &H);
bool is_p_central(const PcGroup &G);

struct TowerFlags {
  bool N_powerful = false;
  bool N_p_central = false;
  bool N_omega_extendible = false;
  bool N_rank_le_r = false;
  bool all() const { return N_powerful && N_p_central && N_omega_extendible && N_rank_le_r; }
};

struct TowerReport {
  std::size_t r = 0;
  Subgroup V, H, N;  // for p = 2 the chain of successive square subgroups
  Subgroup kernel_meet;  // intersection of the kernels (or W under fallback)
  TowerFlags flags;
  std::size_t N_rank = 0;
  std::size_t index_exp = 0;  // log_p [G : N]
  std::size_t bound_exp = 0;  // r (ceil(log2 r) + 2 + e)
  bool fallback_used = false;
  std::string v_definition;  // "hom-kernels" or "gamma_r(G) G^(p^c)"
  std::size_t hom_count = 0;
  bool chain_normal = false;  // V, H, N normal in G and nested
};

struct TowerOptions {
  HomSearchOptions hom;
  std::uint64_t rank_max_order = 256;
  std::uint32_t omega_max_order = 128;
};

/// ceil(log2 r) for r >= 1.
std::size_t ceil_log2(std::size_t r);
/// Smallest c with p^c >= r.
std::size_t ceil_log_p(std::size_t r, std::uint32_t p);

/// The tower for rank parameter r (default: rank(G)).
TowerReport characteristic_tower(const PcGroup &G, std::optional<std::size_t> r = std::nullopt,
                                 const TowerOptions &opts = {});

/// V computed from homomorphisms into UT_r(F_p); throws CapExceeded.
Subgroup kernel_meet(const PcGroup &G, std::size_t r, const HomSearchOptions &opts = {},
                     std::size_t *hom_count = nullptr);
/// gamma_r(G) G^{p^c} with p^c >= r, contained in every kernel.
Subgroup fallback_W(const PcGroup &G, std::size_t r);

nlohmann::json subgroup_json(const PcGroup &G, const Subgroup &S);
nlohmann::json tower_json(const PcGroup &G, const TowerReport &t);

}  // namespace pcoh

#endif
