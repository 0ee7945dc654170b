#include "pcoh/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "pcoh/ffmat.hpp"

namespace pcoh {

using nlohmann::json;

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--)
    r *= b;
  return r;
}

std::uint32_t get_prime(const json &params) {
  const auto p = params.at("p").get<std::uint32_t>();
  if (!is_supported_prime(p))
    throw GroupError("unsupported prime " + std::to_string(p));
  return p;
}

std::size_t two_power_exponent(const json &params, std::size_t min_k, const std::string &fam) {
  const auto order = params.at("order").get<std::uint64_t>();
  std::size_t k = 0;
  try {
    k = log_p(order, 2);
  } catch (const GroupError &) {
    throw GroupError(fam + ": order must be a power of 2");
  }
  if (k < min_k)
    throw GroupError(fam + " requires order >= " + std::to_string(ipow(2, min_k)));
  if (order > 256)
    throw GroupError(fam + ": order above 256");
  return k;
}

Exponents digits(std::uint64_t x, std::uint32_t p, std::size_t offset, std::size_t len,
                 std::size_t n) {
  Exponents w(n, 0);
  for (std::size_t i = 0; i < len; ++i, x /= p)
    w[offset + i] = static_cast<std::uint8_t>(x % p);
  return w;
}

// s of order p with s^p = r^t, r of order p^m, r^s = r^u.  Generators
// g_1 = s, g_{2+i} = r^{p^i}.
Presentation metacyclic(const std::string &name, std::uint32_t p, std::size_t m, std::uint64_t t,
                        std::int64_t u) {
  const std::size_t n = m + 1;
  const std::int64_t pm = static_cast<std::int64_t>(ipow(p, m));
  Presentation P;
  P.name = name;
  P.p = p;
  P.ngens = n;
  P.power.assign(n, Exponents(n, 0));
  P.power[0] = digits(t % static_cast<std::uint64_t>(pm), p, 1, m, n);
  for (std::size_t i = 0; i + 1 < m; ++i)
    P.power[1 + i][2 + i] = 1;
  const std::int64_t um1 = (((u - 1) % pm) + pm) % pm;
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = static_cast<std::uint64_t>(um1 * static_cast<std::int64_t>(ipow(p, i)) % pm);
    if (c)
      P.comm.push_back({1 + i, 0, digits(c, p, 1, m, n)});
  }
  return P;
}

Presentation cyclic_pres(std::uint32_t p, std::size_t k) {
  Presentation P;
  P.name = "C" + std::to_string(ipow(p, k));
  P.p = p;
  P.ngens = k;
  P.power.assign(k, Exponents(k, 0));
  for (std::size_t i = 0; i + 1 < k; ++i)
    P.power[i][i + 1] = 1;
  return P;
}

// Direct product; generators of a come first.
Presentation direct_product(const Presentation &a, const Presentation &b) {
  const std::size_t n = a.ngens + b.ngens;
  Presentation P;
  P.name = a.name + "x" + b.name;
  P.p = a.p;
  P.ngens = n;
  auto shift = [&](const Exponents &w, std::size_t off) {
    Exponents x(n, 0);
    std::copy(w.begin(), w.end(), x.begin() + static_cast<std::ptrdiff_t>(off));
    return x;
  };
  for (const auto &w : a.power)
    P.power.push_back(shift(w, 0));
  for (const auto &w : b.power)
    P.power.push_back(shift(w, a.ngens));
  for (const auto &c : a.comm)
    P.comm.push_back({c.j, c.i, shift(c.w, 0)});
  for (const auto &c : b.comm)
    P.comm.push_back({c.j + a.ngens, c.i + a.ngens, shift(c.w, a.ngens)});
  return P;
}

struct Built {
  Presentation pres;
  std::size_t d = 0;
  std::size_t cls = 0;
};

Built build(const std::string &family, const json &params) {
  if (family == "cyclic") {
    const auto p = get_prime(params);
    const auto n = params.at("n").get<std::size_t>();
    return {cyclic_pres(p, n), n ? 1u : 0u, n ? 1u : 0u};
  }
  if (family == "elem_ab") {
    const auto p = get_prime(params);
    const auto r = params.at("r").get<std::size_t>();
    Presentation P = cyclic_pres(p, 0);
    for (std::size_t i = 0; i < r; ++i)
      P = direct_product(P, cyclic_pres(p, 1));
    P.name = "C" + std::to_string(p) + (r == 1 ? "" : "^" + std::to_string(r));
    return {P, r, r ? 1u : 0u};
  }
  if (family == "abelian") {
    const auto p = get_prime(params);
    Presentation P = cyclic_pres(p, 0);
    std::string name;
    std::size_t d = 0;
    for (const auto &a : params.at("exps")) {
      const auto k = a.get<std::size_t>();
      if (k == 0)
        continue;
      P = direct_product(P, cyclic_pres(p, k));
      name += (name.empty() ? "" : "x") + std::string("C") + std::to_string(ipow(p, k));
      ++d;
    }
    P.name = name.empty() ? "C1" : name;
    return {P, d, d ? 1u : 0u};
  }
  if (family == "dihedral") {
    const auto k = two_power_exponent(params, 3, family);
    return {metacyclic("D" + std::to_string(ipow(2, k)), 2, k - 1, 0, -1), 2, k - 1};
  }
  if (family == "semidihedral") {
    const auto k = two_power_exponent(params, 4, family);
    const auto u = static_cast<std::int64_t>(ipow(2, k - 2)) - 1;
    return {metacyclic("SD" + std::to_string(ipow(2, k)), 2, k - 1, 0, u), 2, k - 1};
  }
  if (family == "quaternion") {
    const auto k = two_power_exponent(params, 3, family);
    return {metacyclic("Q" + std::to_string(ipow(2, k)), 2, k - 1, ipow(2, k - 2), -1), 2,
            k - 1};
  }
  if (family == "modular") {
    const auto p = get_prime(params);
    const auto n = params.at("n").get<std::size_t>();
    if (n < (p == 2 ? 4u : 3u))
      throw GroupError("modular: need n >= " + std::string(p == 2 ? "4" : "3"));
    const std::size_t m = n - 1;
    return {metacyclic("M" + std::to_string(ipow(p, n)), p, m, 0,
                       1 + static_cast<std::int64_t>(ipow(p, m - 1))),
            2, 2};
  }
  if (family == "extraspecial") {
    const auto p = get_prime(params);
    const auto sign = params.at("sign").get<std::string>();
    if (sign != "+" && sign != "-")
      throw GroupError("extraspecial: sign must be + or -");
    if (p == 2)
      return build(sign == "+" ? "dihedral" : "quaternion", json{{"order", 8}});
    const std::string name = "ES" + std::to_string(ipow(p, 3)) + sign;
    if (sign == "-")
      return {metacyclic(name, p, 2, 0, 1 + static_cast<std::int64_t>(p)), 2, 2};
    Presentation P;
    P.name = name;
    P.p = p;
    P.ngens = 3;
    P.power.assign(3, Exponents(3, 0));
    P.comm.push_back({1, 0, Exponents{0, 0, 1}});
    return {P, 2, 2};
  }
  if (family == "product") {
    const auto &factors = params.at("factors");
    if (factors.empty())
      throw GroupError("product: no factors");
    Built acc;
    bool first = true;
    for (const auto &f : factors) {
      Built b = build(f.at("family").get<std::string>(), f.at("params"));
      if (first) {
        acc = std::move(b);
        first = false;
        continue;
      }
      if (b.pres.p != acc.pres.p)
        throw GroupError("product: factors have different primes");
      acc.pres = direct_product(acc.pres, b.pres);
      acc.d += b.d;
      acc.cls = std::max(acc.cls, b.cls);
    }
    return acc;
  }
  throw GroupError("unknown family '" + family + "'");
}

}  // namespace

CorpusEntry make(const std::string &family, const json &params) {
  Built b;
  try {
    b = build(family, params);
  } catch (const json::exception &e) {
    throw GroupError(family + ": bad parameters: " + e.what());
  }
  if (ipow(b.pres.p, b.pres.ngens) > 256)
    throw GroupError(family + ": order above 256");
  CorpusEntry e{PcGroup::validate(std::move(b.pres)), family, params, b.d, b.cls};
  return e;
}

std::vector<CorpusEntry> default_corpus(std::uint32_t p) {
  std::vector<CorpusEntry> out;
  auto add = [&](const std::string &fam, json params) { out.push_back(make(fam, params)); };
  auto factor = [](const std::string &fam, json params) {
    return json{{"family", fam}, {"params", std::move(params)}};
  };
  if (p == 2) {
    for (std::size_t n = 1; n <= 4; ++n)
      add("cyclic", {{"p", 2}, {"n", n}});
    add("elem_ab", {{"p", 2}, {"r", 2}});
    add("elem_ab", {{"p", 2}, {"r", 3}});
    add("abelian", {{"p", 2}, {"exps", {2, 1}}});
    add("abelian", {{"p", 2}, {"exps", {2, 2}}});
    for (int order : {8, 16, 32, 64})
      add("dihedral", {{"order", order}});
    for (int order : {16, 32, 64})
      add("semidihedral", {{"order", order}});
    for (int order : {8, 16, 32, 64})
      add("quaternion", {{"order", order}});
    add("modular", {{"p", 2}, {"n", 4}});
    add("modular", {{"p", 2}, {"n", 5}});
    add("product", {{"factors",
                     {factor("dihedral", {{"order", 8}}), factor("cyclic", {{"p", 2}, {"n", 1}})}}});
    add("product",
        {{"factors",
          {factor("quaternion", {{"order", 8}}), factor("cyclic", {{"p", 2}, {"n", 1}})}}});
    return out;
  }
  if (p != 3 && p != 5)
    throw GroupError("default corpus: unsupported prime " + std::to_string(p));
  for (std::size_t n = 1; n <= 3; ++n)
    add("cyclic", {{"p", p}, {"n", n}});
  add("elem_ab", {{"p", p}, {"r", 2}});
  add("elem_ab", {{"p", p}, {"r", 3}});
  add("abelian", {{"p", p}, {"exps", {2, 1}}});
  add("extraspecial", {{"p", p}, {"sign", "+"}});
  add("extraspecial", {{"p", p}, {"sign", "-"}});
  // M_{p^4} has order 625 at p = 5, beyond the group size cap.
  if (ipow(p, 4) <= 256)
    add("modular", {{"p", p}, {"n", 4}});
  return out;
}

json group_to_json(const PcGroup &G) {
  const Presentation &P = G.presentation();
  json j;
  j["name"] = P.name;
  j["p"] = P.p;
  j["ngens"] = P.ngens;
  json power = json::array();
  for (const auto &w : P.power) {
    json row = json::array();
    for (auto x : w)
      row.push_back(int(x));
    power.push_back(row);
  }
  j["power"] = power;
  json comm = json::array();
  for (const auto &c : P.comm) {
    json w = json::array();
    for (auto x : c.w)
      w.push_back(int(x));
    comm.push_back({{"j", c.j + 1}, {"i", c.i + 1}, {"w", w}});
  }
  j["comm"] = comm;
  return j;
}

PcGroup group_from_json(const json &j, const ValidateOptions &opts) {
  Presentation P;
  try {
    P.name = j.value("name", std::string("G"));
    P.p = j.at("p").get<std::uint32_t>();
    P.ngens = j.at("ngens").get<std::size_t>();
    auto read_word = [&](const json &w, const std::string &what) {
      if (!w.is_array() || w.size() != P.ngens)
        throw GroupError(what + ": expected " + std::to_string(P.ngens) + " exponents");
      Exponents e;
      for (const auto &x : w) {
        const int v = x.get<int>();
        if (v < 0 || static_cast<std::uint32_t>(v) >= P.p)
          throw GroupError(what + ": exponent out of range");
        e.push_back(static_cast<std::uint8_t>(v));
      }
      return e;
    };
    if (j.contains("power")) {
      if (j.at("power").size() != P.ngens)
        throw GroupError("power: expected " + std::to_string(P.ngens) + " rows");
      std::size_t i = 0;
      for (const auto &w : j.at("power"))
        P.power.push_back(read_word(w, "power[" + std::to_string(++i) + "]"));
    }
    if (j.contains("comm"))
      for (const auto &c : j.at("comm")) {
        const auto cj = c.at("j").get<std::size_t>();
        const auto ci = c.at("i").get<std::size_t>();
        if (cj < 1 || ci < 1 || cj > P.ngens || ci > P.ngens)
          throw GroupError("comm: generator index out of range");
        P.comm.push_back({cj - 1, ci - 1, read_word(c.at("w"), "comm w")});
      }
  } catch (const json::exception &e) {
    throw GroupError(std::string("malformed group file: ") + e.what());
  }
  return PcGroup::validate(std::move(P), opts);
}

PcGroup load_group(const std::filesystem::path &file, const ValidateOptions &opts) {
  std::ifstream in(file);
  if (!in)
    throw GroupError("cannot open " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw GroupError(file.string() + ": " + e.what());
  }
  return group_from_json(j, opts);
}

void write_corpus(const std::vector<CorpusEntry> &entries, std::uint32_t p,
                  const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["p"] = p;
  manifest["groups"] = json::array();
  for (const auto &e : entries) {
    const std::string file = e.group.name() + ".json";
    std::ofstream out(dir / file);
    if (!out)
      throw GroupError("cannot write " + (dir / file).string());
    out << group_to_json(e.group).dump(2) << '\n';
    manifest["groups"].push_back({{"name", e.group.name()},
                                  {"file", file},
                                  {"family", e.family},
                                  {"params", e.params},
                                  {"order", e.group.order()}});
  }
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

std::vector<CorpusFile> list_corpus(const std::filesystem::path &dir) {
  std::vector<CorpusFile> out;
  const auto manifest_path = dir / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    json m;
    try {
      in >> m;
      for (const auto &g : m.at("groups"))
        out.push_back({g.at("file").get<std::string>(), g.value("family", std::string()),
                       g.value("params", json::object())});
    } catch (const json::exception &e) {
      throw GroupError(manifest_path.string() + ": " + e.what());
    }
    return out;
  }
  if (!std::filesystem::is_directory(dir))
    throw GroupError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto &f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".json")
      files.push_back(f.path());
  std::sort(files.begin(), files.end());
  for (const auto &f : files)
    out.push_back({f.filename().string(), "", json::object()});
  return out;
}

std::vector<LoadedEntry> load_corpus(const std::filesystem::path &dir,
                                     const ValidateOptions &opts) {
  std::vector<LoadedEntry> out;
  for (const CorpusFile &f : list_corpus(dir))
    out.push_back({f.file, load_group(dir / f.file, opts), f.family, f.params});
  return out;
}

}  // namespace pcoh
