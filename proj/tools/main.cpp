// pcoh: structure, cohomology and bound checks for finite p-groups.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "pcoh/bounds.hpp"
#include "pcoh/corpus.hpp"
#include "pcoh/tower.hpp"
#include "pcoh/verify.hpp"

using namespace pcoh;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kCheckFailure = 1, kInputError = 2;

struct Common {
  std::size_t max_degree = 8;
  std::optional<std::size_t> rank_override;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  bool strict = false;
  bool timings = false;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--max-degree", c.max_degree, "Highest cohomological degree")
      ->capture_default_str();
  cmd->add_option("--rank-override", c.rank_override, "Rank parameter r for the tower");
  cmd->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for sampled associativity checks")
      ->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_flag("--strict", c.strict, "Exit 1 on any failed check");
  cmd->add_flag("--timings", c.timings, "Include wall-clock timings in reports");
}

VerifyOptions verify_options(const Common &c) {
  VerifyOptions o;
  o.max_degree = c.max_degree;
  o.rank_override = c.rank_override;
  o.threads = c.threads;
  o.timings = c.timings;
  return o;
}

ValidateOptions validate_options(const Common &c) {
  ValidateOptions v;
  v.seed = c.seed;
  return v;
}

void emit(const std::string &text, const std::string &path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string render(const json &j) { return j.dump(2) + "\n"; }

int run_analyze(const std::string &file, const Common &c) {
  const PcGroup G = load_group(file, validate_options(c));
  VerificationReport rep;
  rep.groups.push_back(analyze_group(G, "", verify_options(c)));
  emit(c.format == "csv" ? rep.to_csv() : render(rep.to_json()["groups"][0]), c.out);
  return c.strict && rep.any_fail() ? kCheckFailure : kOk;
}

int run_tower(const std::string &file, const Common &c) {
  const PcGroup G = load_group(file, validate_options(c));
  json j = tower_json(G, characteristic_tower(G, c.rank_override));
  j["name"] = G.name();
  j["p"] = G.p();
  j["order_exp"] = G.ngens();
  emit(render(j), c.out);
  return kOk;
}

int run_cohomology(const std::string &file, const Common &c, std::size_t bar) {
  const PcGroup G = load_group(file, validate_options(c));
  const GradedDims d = minres_dims(G, c.max_degree);
  json j{{"name", G.name()},
         {"p", G.p()},
         {"order_exp", G.ngens()},
         {"dims", d.dims},
         {"truncated", d.truncated}};
  if (d.truncated)
    j["note"] = d.note;
  try {
    const H2Presentation h = h2_bar_basis(G);
    j["h1_dim"] = h.h1_dim();
    j["h2_dim"] = h.h2_dim();
    j["z2_dim"] = h.z2_dim();
    j["b2_dim"] = h.b2_dim();
  } catch (const CapExceeded &e) {
    j["h2_error"] = e.what();
  }
  if (bar > 0)
    j["bar_dims"] = bar_dims(G, bar);
  emit(render(j), c.out);
  return kOk;
}

struct BoundsArgs {
  std::uint32_t p = 2;
  std::uint64_t r = 1;
  std::uint64_t n = 1;
  std::uint64_t i = 0;
  std::size_t kmax = 8;
};

int run_bounds(const BoundsArgs &b, const Common &c) {
  std::vector<std::uint64_t> gt, ord;
  for (std::size_t k = 0; k <= b.kmax; ++k) {
    gt.push_back(gt_bound(b.p, b.r, k));
    ord.push_back(order_dim_bound(b.n, k));
  }
  std::uint64_t pn = 1;
  for (std::uint64_t k = 0; k < b.n; ++k)
    pn *= b.p;
  const auto chern = chern_param_bound(pn);
  const auto reg = regularity_degree_bounds(chern.count, chern.max_deg);
  json j{{"p", b.p},
         {"r", b.r},
         {"n", b.n},
         {"i", b.i},
         {"kmax", b.kmax},
         {"order_dim_bound", order_dim_bound(b.n, b.i)},
         {"gt_bound", gt_bound(b.p, b.r, b.i)},
         {"order_dim_series", ord},
         {"gt_series", gt},
         {"tower_index_bound_exp", tower_index_bound_exp(b.p, b.r)},
         {"evens_degree_bound", evens_degree_bound(b.p, b.n, pn)},
         {"chern_param_bound", {{"count", chern.count}, {"max_deg", chern.max_deg}}},
         {"regularity_from_chern", {{"gen_deg", reg.gen_deg}, {"rel_deg", reg.rel_deg}, {"L", reg.L}}}};
  if ((b.p == 2 || b.p == 3) && b.n >= 1 && b.n <= 3) {
    const DicksonSet d = dickson(b.p, b.n);
    j["dickson"] = {{"poly_degrees", d.poly_degrees},
                    {"cohom_degrees", d.cohom_degrees},
                    {"invariant", dickson_invariant(d)}};
  }
  emit(render(j), c.out);
  return kOk;
}

int run_verify_cmd(const std::string &dir, std::optional<std::uint32_t> builtin,
                   const std::string &csv_path, const Common &c) {
  std::vector<GroupInput> inputs;
  if (builtin)
    inputs = builtin_inputs(*builtin);
  else if (!dir.empty())
    inputs = directory_inputs(dir, validate_options(c));
  else
    throw CLI::ValidationError("verify", "give a corpus directory or --builtin p");
  const VerificationReport rep = run_verify(inputs, verify_options(c));
  emit(c.format == "csv" ? rep.to_csv() : render(rep.to_json()), c.out);
  if (!csv_path.empty())
    emit(rep.to_csv(), csv_path);
  return rep.any_fail() ? kCheckFailure : kOk;
}

int run_generate(std::uint32_t p, const std::string &out) {
  write_corpus(default_corpus(p), p, out);
  std::cout << "wrote corpus for p = " << p << " to " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Structure, mod-p cohomology and bound checks for finite p-groups"};
  app.require_subcommand(1);
  Common common;

  std::string file;
  auto *analyze = app.add_subcommand("analyze", "Invariants, cohomology and checks for one group");
  analyze->add_option("file", file, "Group file")->required();
  add_common(analyze, common);

  auto *tower = app.add_subcommand("tower", "Characteristic tower V >= H >= N");
  tower->add_option("file", file, "Group file")->required();
  add_common(tower, common);

  std::size_t bar = 0;
  auto *cohom = app.add_subcommand("cohomology", "Cohomology dimensions");
  cohom->add_option("file", file, "Group file")->required();
  cohom->add_option("--bar", bar, "Also compute bar-complex dims through this degree (<= 3)");
  add_common(cohom, common);

  BoundsArgs bargs;
  auto *bounds = app.add_subcommand("bounds", "Closed-form bounds");
  bounds->add_option("--p", bargs.p)->capture_default_str();
  bounds->add_option("--r", bargs.r)->capture_default_str()->check(CLI::PositiveNumber);
  bounds->add_option("--n", bargs.n)->capture_default_str();
  bounds->add_option("--i", bargs.i)->capture_default_str();
  bounds->add_option("--kmax", bargs.kmax)->capture_default_str();
  add_common(bounds, common);

  std::string dir, csv_path;
  std::optional<std::uint32_t> builtin;
  auto *verify = app.add_subcommand("verify", "Run every registered check over a corpus");
  verify->add_option("dir", dir, "Corpus directory");
  verify->add_option("--builtin", builtin, "Use the built-in corpus for this prime")
      ->check(CLI::IsMember({2, 3, 5}));
  verify->add_option("--csv", csv_path, "Also write the CSV report here");
  add_common(verify, common);

  auto *corpus = app.add_subcommand("corpus", "Corpus management");
  corpus->require_subcommand(1);
  std::uint32_t gen_p = 2;
  std::string gen_out = "corpus";
  auto *generate = corpus->add_subcommand("generate", "Write the default corpus");
  generate->add_option("--p", gen_p)->required()->check(CLI::IsMember({2, 3, 5}));
  generate->add_option("--out", gen_out, "Target directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze)
      return run_analyze(file, common);
    if (*tower)
      return run_tower(file, common);
    if (*cohom)
      return run_cohomology(file, common, bar);
    if (*bounds)
      return run_bounds(bargs, common);
    if (*verify)
      return run_verify_cmd(dir, builtin, csv_path, common);
    if (*generate)
      return run_generate(gen_p, gen_out);
  } catch (const CLI::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
