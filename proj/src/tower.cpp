#include "pcoh/tower.hpp"

#include "pcoh/cohomology.hpp"

namespace pcoh {

bool is_powerful(const PcGroup &G, const Subgroup &H) {
  const Subgroup derived = commutator_subgroup(G, H, H, H);
  const Subgroup power = agemo(G, G.p() == 2 ? 2 : 1, H);
  return is_subgroup_of(derived, power);
}

bool is_powerful(const PcGroup &G) { return is_powerful(G, whole_group(G)); }

bool is_p_central(const PcGroup &G, const Subgroup &H) {
  return is_subgroup_of(omega(G, 1, H), center(G, H));
}

bool is_p_central(const PcGroup &G) { return is_p_central(G, whole_group(G)); }

std::size_t ceil_log2(std::size_t r) {
  std::size_t c = 0;
  while ((std::size_t{1} << c) < r)
    ++c;
  return c;
}

std::size_t ceil_log_p(std::size_t r, std::uint32_t p) {
  std::size_t c = 0;
  for (std::uint64_t q = 1; q < r; q *= p)
    ++c;
  return c;
}

Subgroup kernel_meet(const PcGroup &G, std::size_t r, const HomSearchOptions &opts,
                     std::size_t *hom_count) {
  const auto homs = homs_to_unitriangular(G, r, opts);
  if (hom_count)
    *hom_count = homs.size();
  Subgroup V = whole_group(G);
  for (const UtHom &h : homs) {
    if (V.order() == 1)
      break;
    V = intersection(G, V, hom_kernel(G, h));
  }
  return V;
}

Subgroup fallback_W(const PcGroup &G, std::size_t r) {
  const auto lcs = standard_series(G).lower_central;
  const Subgroup gamma = r == 0 ? whole_group(G)
                         : r - 1 < lcs.size() ? lcs[r - 1]
                                              : trivial_subgroup();
  return join(G, gamma, agemo(G, ceil_log_p(r, G.p())));
}

TowerReport characteristic_tower(const PcGroup &G, std::optional<std::size_t> r,
                                 const TowerOptions &opts) {
  TowerReport t;
  if (r) {
    t.r = *r;
  } else {
    const auto s = structure_invariants(G, opts.rank_max_order);
    t.r = s.rank ? *s.rank : G.ngens();
  }
  if (t.r == 0)
    t.r = 1;
  try {
    t.kernel_meet = kernel_meet(G, t.r, opts.hom, &t.hom_count);
    t.v_definition = "hom-kernels";
  } catch (const CapExceeded &) {
    t.kernel_meet = fallback_W(G, t.r);
    t.fallback_used = true;
    t.v_definition = "gamma_r(G) G^(p^c)";
  }

  if (G.p() == 2) {
    t.V = agemo(G, 1, t.kernel_meet);
    t.H = agemo(G, 1, t.V);
    t.N = agemo(G, 1, t.H);
  } else {
    t.V = t.kernel_meet;
    t.H = agemo(G, 1, t.V);
    t.N = agemo(G, 1, t.H);
  }
  t.chain_normal = is_normal(G, t.V) && is_normal(G, t.H) && is_normal(G, t.N) &&
                   is_subgroup_of(t.H, t.V) && is_subgroup_of(t.N, t.H);

  t.flags.N_powerful = is_powerful(G, t.N);
  t.flags.N_p_central = is_p_central(G, t.N);
  const SubgroupPresentation Ng = as_group(G, t.N, G.name() + ".N");
  t.flags.N_omega_extendible = omega_extendible(Ng.group, opts.omega_max_order).verdict;
  t.N_rank = subgroup_rank(G, t.N, opts.rank_max_order);
  t.flags.N_rank_le_r = t.N_rank <= t.r;

  t.index_exp = log_p(G.order() / t.N.order(), G.p());
  t.bound_exp = t.r * (ceil_log2(t.r) + 2 + (G.p() == 2 ? 1 : 0));
  return t;
}

nlohmann::json subgroup_json(const PcGroup &G, const Subgroup &S) {
  nlohmann::json gens = nlohmann::json::array();
  for (Elem g : S.gens)
    gens.push_back(G.exponents(g));
  return {{"order", S.order()}, {"gens", gens}};
}

nlohmann::json tower_json(const PcGroup &G, const TowerReport &t) {
  return {{"r", t.r},
          {"V", subgroup_json(G, t.V)},
          {"H", subgroup_json(G, t.H)},
          {"N", subgroup_json(G, t.N)},
          {"kernel_meet", subgroup_json(G, t.kernel_meet)},
          {"v_definition", t.v_definition},
          {"hom_count", t.hom_count},
          {"chain_normal", t.chain_normal},
          {"flags",
           {{"N_powerful", t.flags.N_powerful},
            {"N_p_central", t.flags.N_p_central},
            {"N_omega_extendible", t.flags.N_omega_extendible},
            {"N_rank_le_r", t.flags.N_rank_le_r}}},
          {"N_rank", t.N_rank},
          {"index_exp", t.index_exp},
          {"bound_exp", t.bound_exp},
          {"fallback_used", t.fallback_used}};
}

}  // namespace pcoh
