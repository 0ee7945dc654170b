#include "pcoh/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include <omp.h>

#include "pcoh/bounds.hpp"
#include "pcoh/corpus.hpp"
#include "pcoh/tower.hpp"

namespace pcoh {

using nlohmann::json;

const std::vector<std::string> &check_registry() {
  static const std::vector<std::string> ids = {
      "LE-DIMBOUND", "GT-BOUND",      "TOWER-THM4",    "POWERFUL-EQ", "OMEGA-CRIT",
      "COHOMCHAR-12", "COHOMCHAR-3", "FAMILY-CONST", "VANDERMONDE", "DICKSON-INV"};
  return ids;
}

namespace {

const std::vector<std::string> kGroupChecks = {"LE-DIMBOUND", "GT-BOUND",     "TOWER-THM4",
                                               "POWERFUL-EQ", "OMEGA-CRIT",   "COHOMCHAR-12",
                                               "COHOMCHAR-3", "FAMILY-CONST"};

CheckResult pass(std::string w = "") { return {"pass", std::move(w)}; }
CheckResult fail(std::string w) { return {"fail", std::move(w)}; }

std::string b2s(bool b) { return b ? "true" : "false"; }

std::string dims_string(const std::vector<std::size_t> &d) {
  std::ostringstream s;
  for (std::size_t i = 0; i < d.size(); ++i)
    s << (i ? " " : "") << d[i];
  return s.str();
}

class Stopwatch {
public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

CheckResult dim_bound_check(const GradedDims &dims, std::size_t kmax,
                            const std::function<std::uint64_t(std::size_t)> &bound) {
  for (std::size_t i = 0; i < dims.dims.size(); ++i)
    if (dims.dims[i] > bound(i)) {
      std::ostringstream w;
      w << "degree " << i << ": dim " << dims.dims[i] << " > bound " << bound(i);
      return fail(w.str());
    }
  if (dims.dims.size() <= kmax)
    return {"inconclusive", "resolution truncated after degree " +
                                std::to_string(dims.dims.size() - 1)};
  return pass();
}

CheckResult vandermonde_check() {
  for (std::uint64_t a = 0; a <= 20; ++a)
    for (std::uint64_t b = 0; a + b <= 20; ++b)
      if (series_mul(series_geom(a, 20), series_geom(b, 20), 20) != series_geom(a + b, 20))
        return fail("a=" + std::to_string(a) + " b=" + std::to_string(b));
  for (std::uint32_t p : {2u, 3u})
    for (std::uint64_t r = 1; r <= 8; ++r) {
      const TruncSeries s =
          lhs_e2_bound(series_geom(r, 20), series_geom(tower_index_bound_exp(p, r), 20), 20);
      for (std::size_t i = 0; i <= 20; ++i)
        if (s.coeffs[i] != gt_bound(p, r, i))
          return fail("p=" + std::to_string(p) + " r=" + std::to_string(r) +
                      " degree " + std::to_string(i));
    }
  return pass();
}

CheckResult dickson_check() {
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 3; ++n) {
      const DicksonSet d = dickson(p, n);
      const std::string at = "p=" + std::to_string(p) + " n=" + std::to_string(n);
      if (!dickson_invariant(d))
        return fail(at + ": not invariant");
      std::uint64_t pn = 1, pi = 1;
      for (std::size_t k = 0; k < n; ++k)
        pn *= p;
      for (std::size_t i = 0; i < n; ++i, pi *= p)
        if (!poly_homogeneous(d.c[i]) || poly_degree(d.c[i]) != pn - pi)
          return fail(at + " i=" + std::to_string(i) + ": degree " +
                      std::to_string(poly_degree(d.c[i])));
    }
  return pass();
}

// FAMILY-CONST over the coclass-one families of 2-groups of order 16 to 64.
void family_constancy(std::vector<GroupRecord> &groups) {
  static const std::vector<std::string> families = {"dihedral", "semidihedral", "quaternion"};
  struct Sig {
    json dims;
    json kernel;
    bool operator==(const Sig &) const = default;
  };
  std::map<std::string, std::vector<GroupRecord *>> members;
  for (GroupRecord &g : groups)
    if (!g.error && g.p == 2 && g.order_exp >= 4 && g.order_exp <= 6 &&
        std::find(families.begin(), families.end(), g.family) != families.end())
      members[g.family].push_back(&g);
  auto sig = [](const GroupRecord &g) {
    return Sig{g.data.at("dims"), g.data.at("relations").value("kernel_dim", json())};
  };
  std::map<std::string, std::pair<std::string, Sig>> refs;
  for (auto &[fam, list] : members) {
    std::sort(list.begin(), list.end(),
              [](const GroupRecord *a, const GroupRecord *b) { return a->order_exp < b->order_exp; });
    refs[fam] = {list.front()->name, sig(*list.front())};
  }
  for (auto &[fam, list] : members) {
    const auto &[ref_name, ref] = refs[fam];
    std::string clash;
    for (const auto &[other, o] : refs)
      if (other != fam && o.second == ref)
        clash = o.first;
    for (GroupRecord *g : list) {
      const Sig s = sig(*g);
      if (s.dims != ref.dims)
        g->checks["FAMILY-CONST"] = fail("dims [" + s.dims.dump() + "] differ from " + ref_name +
                                         " [" + ref.dims.dump() + "]");
      else if (s.kernel != ref.kernel)
        g->checks["FAMILY-CONST"] = fail("relation kernel " + s.kernel.dump() + " differs from " +
                                         ref_name + " " + ref.kernel.dump());
      else if (!clash.empty())
        g->checks["FAMILY-CONST"] = fail("family signature equals that of " + clash);
      else
        g->checks["FAMILY-CONST"] = pass("matches " + ref_name);
    }
  }
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

GroupRecord analyze_group(const PcGroup &G, const std::string &family, const VerifyOptions &opts) {
  GroupRecord rec;
  rec.name = G.name();
  rec.p = G.p();
  rec.order_exp = G.ngens();
  rec.family = family;
  for (const auto &id : kGroupChecks)
    rec.checks[id] = {};
  json &data = rec.data;
  json timings = json::object();
  Stopwatch sw;

  const StructureInvariants inv = structure_invariants(G);
  data["d"] = inv.d;
  data["rank"] = inv.rank ? json(*inv.rank) : json();
  data["class"] = inv.nilpotency_class;
  data["coclass"] = inv.coclass;
  data["exponent"] = inv.exponent;
  const bool abelian = is_abelian(G, whole_group(G));
  data["abelian"] = abelian;
  const bool powerful = is_powerful(G);
  const bool pcentral = is_p_central(G);
  data["powerful"] = powerful;
  data["p_central"] = pcentral;
  timings["structure"] = sw.lap();

  const GradedDims dims = minres_dims(G, opts.max_degree, opts.minres);
  data["dims"] = dims.dims;
  data["dims_truncated"] = dims.truncated;
  if (dims.truncated)
    data["dims_note"] = dims.note;
  timings["minres"] = sw.lap();

  rec.checks["LE-DIMBOUND"] = dim_bound_check(dims, opts.max_degree, [&](std::size_t i) {
    return order_dim_bound(G.ngens(), i);
  });
  if (inv.rank)
    rec.checks["GT-BOUND"] = dim_bound_check(dims, opts.max_degree, [&](std::size_t i) {
      return gt_bound(G.p(), *inv.rank, i);
    });
  else
    rec.checks["GT-BOUND"] = {"skipped", "rank unavailable"};

  std::optional<OmegaReport> omega;
  std::optional<RelationReport> rel;
  try {
    omega = omega_extendible(G);
    json per = json::array();
    for (const auto &a : omega->per_A)
      per.push_back({{"order", a.A.order()},
                     {"rank", a.rank},
                     {"b_dim", a.b_dim},
                     {"res_dim", a.res_dim},
                     {"contained", a.contained}});
    data["omega_extendible"] = omega->verdict;
    data["omega_all_agree"] = omega->all_agree;
    data["omega_per_A"] = per;
  } catch (const CapExceeded &e) {
    data["omega_extendible"] = json();
    data["omega_error"] = e.what();
  }
  try {
    rel = powerful_cohom(G);
    data["relations"] = {{"verdict", rel->verdict},
                         {"h1", rel->h1},
                         {"h2", rel->h2},
                         {"source_dim", rel->source_dim},
                         {"kernel_dim", rel->kernel_dim},
                         {"square_kernel_dim", rel->square_kernel_dim}};
  } catch (const CapExceeded &e) {
    data["relations"] = {{"error", e.what()}};
  }
  timings["degree2"] = sw.lap();

  if (rel) {
    rec.checks["POWERFUL-EQ"] =
        rel->verdict == powerful
            ? pass()
            : fail("definition " + b2s(powerful) + ", cohomology " + b2s(rel->verdict) +
                   " (kernel " + std::to_string(rel->kernel_dim) + ", squares " +
                   std::to_string(rel->square_kernel_dim) + ")");
  } else {
    rec.checks["POWERFUL-EQ"] = {"skipped", "degree-2 cohomology above size cap"};
  }

  if (omega) {
    if (omega->verdict && !pcentral)
      rec.checks["OMEGA-CRIT"] = fail("criterion true but not p-central");
    else if (abelian && !omega->verdict)
      rec.checks["OMEGA-CRIT"] = fail("abelian group fails the criterion");
    else if (!omega->all_agree)
      rec.checks["OMEGA-CRIT"] = {"inconclusive", "maximal elementary abelian subgroups disagree"};
    else
      rec.checks["OMEGA-CRIT"] = pass(std::to_string(omega->per_A.size()) + " subgroups A");
  } else {
    rec.checks["OMEGA-CRIT"] = {"skipped", "degree-2 cohomology above size cap"};
  }

  const bool shape = abelian_shape(dims, inv.d);
  data["abelian_shape"] = shape;
  if (omega) {
    const bool want = powerful && omega->verdict;
    if (dims.truncated)
      rec.checks["COHOMCHAR-12"] = {"inconclusive", "resolution truncated"};
    else if (shape == want)
      rec.checks["COHOMCHAR-12"] = pass();
    else
      rec.checks["COHOMCHAR-12"] =
          fail("abelian shape " + b2s(shape) + ", powerful " + b2s(powerful) + ", omega " +
               b2s(omega->verdict) + ", dims " + dims_string(dims.dims));
  } else {
    rec.checks["COHOMCHAR-12"] = {"skipped", "omega criterion unavailable"};
  }

  try {
    const Param2Report p2 = param2_analogue(G);
    json sur = json::array();
    for (bool b : p2.surjective_per_A)
      sur.push_back(b);
    data["param2"] = {{"verdict", p2.verdict}, {"no_relations", p2.no_relations},
                      {"surjective_per_A", sur}};
    if (G.p() == 2) {
      rec.checks["COHOMCHAR-3"] = {"skipped", "p = 2: reported as data"};
    } else if (omega) {
      const bool want = powerful && omega->verdict;
      rec.checks["COHOMCHAR-3"] =
          p2.verdict == want ? pass()
                             : fail("parameters " + b2s(p2.verdict) + ", powerful " +
                                    b2s(powerful) + ", omega " + b2s(omega->verdict));
    }
  } catch (const CapExceeded &e) {
    data["param2"] = {{"error", e.what()}};
    rec.checks["COHOMCHAR-3"] = {"skipped", "degree-2 cohomology above size cap"};
  }
  timings["criteria"] = sw.lap();

  const TowerReport tower = characteristic_tower(G, opts.rank_override);
  data["tower"] = tower_json(G, tower);
  {
    std::vector<std::string> bad;
    if (!tower.chain_normal)
      bad.push_back("chain not normal");
    if (!tower.flags.N_powerful)
      bad.push_back("N not powerful");
    if (!tower.flags.N_p_central)
      bad.push_back("N not p-central");
    if (!tower.flags.N_omega_extendible)
      bad.push_back("N not Omega-extendible");
    if (!tower.flags.N_rank_le_r)
      bad.push_back("rank(N) " + std::to_string(tower.N_rank) + " > r " +
                    std::to_string(tower.r));
    if (tower.index_exp > tower.bound_exp)
      bad.push_back("index exponent " + std::to_string(tower.index_exp) + " > bound " +
                    std::to_string(tower.bound_exp));
    std::string w;
    for (const auto &b : bad)
      w += (w.empty() ? "" : "; ") + b;
    const std::string idx =
        "index " + std::to_string(tower.index_exp) + " <= " + std::to_string(tower.bound_exp);
    if (bad.empty())
      rec.checks["TOWER-THM4"] = pass(tower.fallback_used ? idx + " (fallback V)" : idx);
    else
      rec.checks["TOWER-THM4"] = {tower.fallback_used ? "inconclusive" : "fail", w};
  }
  timings["tower"] = sw.lap();

  if (opts.timings)
    data["timings"] = timings;
  return rec;
}

std::vector<GroupInput> builtin_inputs(std::uint32_t p) {
  std::vector<GroupInput> out;
  for (auto &e : default_corpus(p))
    out.push_back({e.group.name(), e.family, e.params, std::move(e.group), ""});
  return out;
}

std::vector<GroupInput> directory_inputs(const std::filesystem::path &dir,
                                         const ValidateOptions &vopts) {
  std::vector<GroupInput> out;
  for (const CorpusFile &f : list_corpus(dir)) {
    GroupInput in;
    in.name = std::filesystem::path(f.file).stem().string();
    in.family = f.family;
    in.params = f.params;
    try {
      in.group = load_group(dir / f.file, vopts);
      in.name = in.group->name().empty() ? in.name : in.group->name();
    } catch (const std::exception &e) {
      in.error = e.what();
      try {
        std::ifstream raw(dir / f.file);
        const json j = json::parse(raw);
        in.p = j.value("p", 0u);
        in.order_exp = j.value("ngens", std::size_t{0});
      } catch (const std::exception &) {
      }
    }
    out.push_back(std::move(in));
  }
  return out;
}

VerificationReport run_verify(const std::vector<GroupInput> &inputs, const VerifyOptions &opts) {
  VerificationReport report;
  std::vector<GroupRecord> records(inputs.size());
  const int threads = std::max(1, opts.threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const GroupInput &in = inputs[k];
    GroupRecord rec;
    std::string error = in.error;
    if (in.group) {
      try {
        rec = analyze_group(*in.group, in.family, opts);
      } catch (const std::exception &e) {
        error = e.what();
      }
    }
    if (!in.group || !error.empty()) {
      rec = GroupRecord{};
      rec.name = in.name;
      rec.family = in.family;
      rec.p = in.group ? in.group->p() : in.p;
      rec.order_exp = in.group ? in.group->ngens() : in.order_exp;
      rec.error = true;
      rec.data["error"] = error;
      for (const auto &id : kGroupChecks)
        rec.checks[id] = fail("error: " + error);
    }
    records[k] = std::move(rec);
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const GroupRecord &a, const GroupRecord &b) { return a.name < b.name; });
  family_constancy(records);
  report.groups = std::move(records);
  report.global["VANDERMONDE"] = vandermonde_check();
  report.global["DICKSON-INV"] = dickson_check();
  return report;
}

bool VerificationReport::any_fail() const {
  for (const auto &g : groups)
    for (const auto &[id, c] : g.checks)
      if (c.verdict == "fail")
        return true;
  for (const auto &[id, c] : global)
    if (c.verdict == "fail")
      return true;
  return false;
}

json VerificationReport::to_json() const {
  json out;
  json gs = json::array();
  std::map<std::string, std::map<std::string, int>> summary;
  for (const auto &g : groups) {
    json r = g.data;
    r["name"] = g.name;
    r["p"] = g.p;
    r["order_exp"] = g.order_exp;
    r["family"] = g.family;
    r["error"] = g.error;
    json checks = json::object();
    for (const auto &[id, c] : g.checks) {
      checks[id] = {{"verdict", c.verdict}, {"witness", c.witness}};
      ++summary[id][c.verdict];
    }
    r["checks"] = checks;
    gs.push_back(r);
  }
  json gl = json::object();
  for (const auto &[id, c] : global) {
    gl[id] = {{"verdict", c.verdict}, {"witness", c.witness}};
    ++summary[id][c.verdict];
  }
  out["groups"] = gs;
  out["global"] = gl;
  out["summary"] = summary;
  out["ok"] = !any_fail();
  return out;
}

std::string VerificationReport::to_csv() const {
  std::ostringstream s;
  s << "name,p,order_exp,check,verdict,witness\n";
  auto row = [&](const std::string &name, std::uint32_t p, std::size_t n, const std::string &id,
                 const CheckResult &c) {
    s << csv_field(name) << ',' << p << ',' << n << ',' << id << ',' << c.verdict << ','
      << csv_field(c.witness) << '\n';
  };
  for (const auto &g : groups)
    for (const auto &[id, c] : g.checks)
      row(g.name, g.p, g.order_exp, id, c);
  for (const auto &[id, c] : global)
    row("(global)", 0, 0, id, c);
  return s.str();
}

}  // namespace pcoh
