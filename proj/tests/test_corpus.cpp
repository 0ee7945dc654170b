#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <set>

#include "pcoh/corpus.hpp"

using namespace pcoh;
using nlohmann::json;

TEST_CASE("family constructors") {
  const auto q8 = make("quaternion", {{"order", 8}});
  CHECK(q8.group.order() == 8);
  CHECK(structure_invariants(q8.group).coclass == 1);
  // Q8 has a unique involution
  int involutions = 0;
  for (auto o : element_orders(q8.group))
    involutions += o == 2;
  CHECK(involutions == 1);

  const auto e = make("elem_ab", {{"p", 3}, {"r", 2}});
  CHECK(e.group.order() == 9);
  CHECK(is_elementary_abelian(e.group, whole_group(e.group)));

  // M16 = <a, b | a^8, b^2, a^b = a^5>: check the relations on a = g_2, b = g_1.
  const auto m = make("modular", {{"p", 2}, {"n", 4}});
  const PcGroup &M = m.group;
  const Elem a = M.generator(1), b = M.generator(0);
  CHECK(element_order(M, a) == 8);
  CHECK(element_order(M, b) == 2);
  CHECK(M.conj(a, b) == M.pow(a, 5));
  CHECK(subgroup_generated(M, std::vector<Elem>{a, b}).order() == 16);
}

TEST_CASE("coclass one families") {
  for (const std::string fam : {"dihedral", "semidihedral", "quaternion"})
    for (int order : {8, 16, 32, 64, 128}) {
      if (fam == "semidihedral" && order == 8) {
        CHECK_THROWS_AS(make(fam, {{"order", order}}), GroupError);
        continue;
      }
      const auto e = make(fam, {{"order", order}});
      CAPTURE(e.group.name());
      const auto s = structure_invariants(e.group, 64);
      CHECK(s.coclass == 1);
      CHECK(s.d == 2);
    }
  // Generalised quaternion groups have a unique involution; dihedral groups
  // of order 2^k have 2^{k-1} + 1.
  for (int order : {16, 32}) {
    int qi = 0, di = 0;
    for (auto o : element_orders(make("quaternion", {{"order", order}}).group))
      qi += o == 2;
    for (auto o : element_orders(make("dihedral", {{"order", order}}).group))
      di += o == 2;
    CHECK(qi == 1);
    CHECK(di == order / 2 + 1);
  }
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(make("dihedral", {{"order", 12}}), GroupError);
  CHECK_THROWS_AS(make("dihedral", {{"order", 512}}), GroupError);
  CHECK_THROWS_AS(make("cyclic", {{"p", 4}, {"n", 2}}), GroupError);
  CHECK_THROWS_AS(make("modular", {{"p", 2}, {"n", 3}}), GroupError);
  CHECK_THROWS_AS(make("nonsense", json::object()), GroupError);
  CHECK_THROWS_AS(make("cyclic", {{"p", 2}}), GroupError);
  CHECK_THROWS_AS(default_corpus(7), GroupError);
}

TEST_CASE("default corpora") {
  const auto c2 = default_corpus(2);
  CHECK(c2.size() >= 20);
  std::set<std::string> names;
  for (const auto &e : c2)
    names.insert(e.group.name());
  CHECK(names.size() == c2.size());
  for (const char *n : {"C2", "C16", "C2^2", "C2^3", "C4xC2", "C4xC4", "D8", "D64", "SD16", "SD64",
                        "Q8", "Q64", "M16", "M32", "D8xC2", "Q8xC2"})
    CHECK(names.count(n) == 1);

  const auto c3 = default_corpus(3);
  bool found = false;
  for (const auto &e : c3)
    if (e.family == "extraspecial" && e.params.at("sign") == "+") {
      found = true;
      const auto s = structure_invariants(e.group);
      CHECK(s.exponent == 3);
      CHECK(s.nilpotency_class == 2);
      CHECK(s.coclass == 1);
    }
  CHECK(found);

  const auto c5 = default_corpus(5);
  found = false;
  for (const auto &e : c5)
    if (e.family == "elem_ab" && e.params.at("r") == 3) {
      found = true;
      CHECK(structure_invariants(e.group).rank == 3);
    }
  CHECK(found);
}

TEST_CASE("property: predicted invariants match computed ones") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto &e : default_corpus(p)) {
      CAPTURE(e.group.name());
      const auto s = structure_invariants(e.group);
      CHECK(s.d == e.predicted_d);
      CHECK(s.nilpotency_class == e.predicted_class);
      CHECK(s.coclass == e.group.ngens() - e.predicted_class);
      // C_p is the only corpus group of coclass 0
      if (e.group.order() == p)
        CHECK(s.coclass == 0);
      else
        CHECK(s.coclass >= 1);
      if (s.rank) {
        CHECK(s.d <= *s.rank);
        CHECK(*s.rank <= e.group.ngens());
      }
    }
}

TEST_CASE("JSON round trip and corpus files") {
  const auto dir = std::filesystem::temp_directory_path() / "pcoh_corpus_test";
  std::filesystem::remove_all(dir);
  const auto entries = default_corpus(3);
  write_corpus(entries, 3, dir);
  const auto loaded = load_corpus(dir);
  REQUIRE(loaded.size() == entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const PcGroup &a = entries[k].group, &b = loaded[k].group;
    CHECK(a.name() == b.name());
    CHECK(loaded[k].family == entries[k].family);
    REQUIRE(a.order() == b.order());
    for (Elem x = 0; x < a.order(); ++x)
      for (Elem y = 0; y < a.order(); y += 5)
        CHECK(a.mul(x, y) == b.mul(x, y));
  }
  std::filesystem::remove_all(dir);

  // 1-based indices in the file format
  const json d8 = group_to_json(make("dihedral", {{"order", 8}}).group);
  CHECK(d8["comm"][0]["j"] == 2);
  CHECK(d8["comm"][0]["i"] == 1);
  CHECK(d8["comm"][0]["w"] == json{0, 0, 1});

  json bad = d8;
  bad["comm"][0]["w"] = json{0, 1, 0};
  CHECK_THROWS_AS(group_from_json(bad), GroupError);
  bad = d8;
  bad.erase("p");
  CHECK_THROWS_WITH_AS(group_from_json(bad), doctest::Contains("malformed"), GroupError);
}
