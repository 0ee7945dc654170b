#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcoh/corpus.hpp"
#include "pcoh/tower.hpp"

using namespace pcoh;
using nlohmann::json;

namespace {

PcGroup grp(const std::string &fam, json params) { return make(fam, params).group; }
PcGroup cyc(std::uint32_t p, std::size_t n) { return grp("cyclic", {{"p", p}, {"n", n}}); }
PcGroup elab(std::uint32_t p, std::size_t r) { return grp("elem_ab", {{"p", p}, {"r", r}}); }

// Powerful by raw element sets: commutators of all pairs against the
// p-th (or 4th) powers of all elements.
bool powerful_brute(const PcGroup &G) {
  std::vector<Elem> comms, powers;
  for (Elem x = 0; x < G.order(); ++x) {
    powers.push_back(G.pow(x, G.p() == 2 ? 4 : G.p()));
    for (Elem y = 0; y < G.order(); ++y)
      comms.push_back(G.comm(x, y));
  }
  const Subgroup D = subgroup_generated(G, comms), P = subgroup_generated(G, powers);
  for (Elem x : D.elements)
    if (!P.contains(x))
      return false;
  return true;
}

bool p_central_brute(const PcGroup &G) {
  for (Elem x = 0; x < G.order(); ++x)
    if (G.pow(x, G.p()) == PcGroup::identity)
      for (Elem y = 0; y < G.order(); ++y)
        if (G.mul(x, y) != G.mul(y, x))
          return false;
  return true;
}

}  // namespace

TEST_CASE("powerful and p-central examples") {
  const PcGroup d8 = grp("dihedral", {{"order", 8}});
  CHECK_FALSE(is_powerful(d8));
  CHECK(commutator_subgroup(d8, whole_group(d8), whole_group(d8), whole_group(d8)).order() == 2);
  CHECK(agemo(d8, 2).order() == 1);
  CHECK_FALSE(is_p_central(d8));

  const PcGroup m16 = grp("modular", {{"p", 2}, {"n", 4}});
  CHECK(is_powerful(m16));
  const Subgroup m16_derived =
      commutator_subgroup(m16, whole_group(m16), whole_group(m16), whole_group(m16));
  CHECK(m16_derived == agemo(m16, 2));
  CHECK(m16_derived.order() == 2);

  CHECK(is_p_central(grp("quaternion", {{"order", 8}})));
  CHECK(is_p_central(elab(3, 3)));
  CHECK(is_p_central(elab(2, 2)));
  for (std::uint32_t p : {2u, 3u})
    for (const auto &e : default_corpus(p))
      if (is_abelian(e.group, whole_group(e.group)))
        CHECK(is_powerful(e.group));
}

TEST_CASE("property: predicates agree with element-level definitions") {
  for (std::uint32_t p : {2u, 3u})
    for (const auto &e : default_corpus(p)) {
      CAPTURE(e.group.name());
      CHECK(is_powerful(e.group) == powerful_brute(e.group));
      CHECK(is_p_central(e.group) == p_central_brute(e.group));
    }
}

TEST_CASE("tower of C8 attains the index bound") {
  const PcGroup G = cyc(2, 3);
  const TowerReport t = characteristic_tower(G, 1);
  CHECK_FALSE(t.fallback_used);
  CHECK(t.kernel_meet.order() == 8);
  CHECK(t.V.order() == 4);
  CHECK(t.H.order() == 2);
  CHECK(t.N.order() == 1);
  CHECK(t.index_exp == 3);
  CHECK(t.bound_exp == 3);
  CHECK(t.flags.all());
}

TEST_CASE("tower of elementary abelian groups of rank two") {
  const TowerReport t2 = characteristic_tower(elab(2, 2), 2);
  CHECK(t2.kernel_meet.order() == 1);
  CHECK(t2.N.order() == 1);
  CHECK(t2.index_exp == 2);
  CHECK(t2.bound_exp == 8);

  const TowerReport t3 = characteristic_tower(elab(3, 2));
  CHECK(t3.r == 2);
  CHECK(t3.kernel_meet.order() == 1);
  CHECK(t3.N.order() == 1);
  CHECK(t3.index_exp == 2);
  CHECK(t3.bound_exp == 6);  // 2 (1 + 2 + 0)
  CHECK(t3.flags.all());
}

TEST_CASE("ceil logs") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log_p(1, 3) == 0);
  CHECK(ceil_log_p(3, 3) == 1);
  CHECK(ceil_log_p(4, 3) == 2);
}

TEST_CASE("property: tower conclusions on the corpus") {
  for (std::uint32_t p : {2u, 3u})
    for (const auto &e : default_corpus(p)) {
      const PcGroup &G = e.group;
      CAPTURE(G.name());
      const TowerReport t = characteristic_tower(G);
      CHECK(t.chain_normal);
      CHECK(is_subgroup_of(t.V, t.kernel_meet));
      for (Elem g : G.generator(0) == 0 ? std::vector<Elem>{} : std::vector<Elem>{G.generator(0)})
        for (Elem x : t.N.elements)
          CHECK(t.N.contains(G.conj(x, g)));
      if (!t.fallback_used) {
        CHECK(t.flags.all());
        CHECK(t.index_exp <= t.bound_exp);
      }
    }
}

TEST_CASE("property: enlarging r never enlarges V") {
  for (const char *fam : {"dihedral", "quaternion"})
    for (int order : {8, 16}) {
      const PcGroup G = grp(fam, {{"order", order}});
      Subgroup prev = whole_group(G);
      for (std::size_t r = 1; r <= 3; ++r) {
        const Subgroup V = kernel_meet(G, r);
        CHECK(is_subgroup_of(V, prev));
        prev = V;
      }
    }
  const PcGroup G = grp("extraspecial", {{"p", 3}, {"sign", "+"}});
  CHECK(is_subgroup_of(kernel_meet(G, 3), kernel_meet(G, 2)));
  CHECK(is_subgroup_of(kernel_meet(G, 2), kernel_meet(G, 1)));
}

TEST_CASE("fallback tower") {
  const PcGroup G = grp("dihedral", {{"order", 16}});
  TowerOptions opts;
  opts.hom.candidate_cap = 1;
  const TowerReport t = characteristic_tower(G, 2, opts);
  CHECK(t.fallback_used);
  CHECK(t.v_definition != "hom-kernels");
  // W is contained in the exact intersection of kernels
  CHECK(is_subgroup_of(t.kernel_meet, kernel_meet(G, 2)));
  CHECK(t.kernel_meet == fallback_W(G, 2));
  CHECK(t.chain_normal);
}

TEST_CASE("tower JSON") {
  const PcGroup G = cyc(2, 3);
  const json j = tower_json(G, characteristic_tower(G, 1));
  CHECK(j["index_exp"] == 3);
  CHECK(j["bound_exp"] == 3);
  CHECK(j["fallback_used"] == false);
  CHECK(j["V"]["order"] == 4);
  CHECK(j["N"]["order"] == 1);
  CHECK(j["flags"]["N_powerful"] == true);
  std::vector<Elem> gens;
  for (const auto &w : j["V"]["gens"])
    gens.push_back(G.index(w.get<Exponents>()));
  CHECK(subgroup_generated(G, gens).order() == 4);
}
