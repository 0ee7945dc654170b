#ifndef PCOH_CORPUS_HPP
#define PCOH_CORPUS_HPP

// Constructors for standard families of p-groups, and the JSON group file
// format.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcoh/pcgroup.hpp"

namespace pcoh {

struct CorpusEntry {
  PcGroup group;
  std::string family;  // cyclic, elem_ab, abelian, dihedral, semidihedral, quaternion,
                       // modular, extraspecial, product
  nlohmann::json params;
  // Values the family formula predicts.
  std::size_t predicted_d = 0;
  std::size_t predicted_class = 0;
};

/// Parameters by family:
///   cyclic        {"p", "n"}             C_{p^n}
///   elem_ab       {"p", "r"}             C_p^r
///   abelian       {"p", "exps": [a..]}   C_{p^a_1} x C_{p^a_2} x ...
///   dihedral      {"order"}              D_{2^k}, k >= 3
///   semidihedral  {"order"}              SD_{2^k}, k >= 4
///   quaternion    {"order"}              Q_{2^k}, k >= 3
///   modular       {"p", "n"}             M_{p^n} = <a, b | a^{p^{n-1}}, b^p, a^b = a^{1+p^{n-2}}>
///   extraspecial  {"p", "sign": "+"|"-"} order p^3; "+" has exponent p (D_8 at p = 2),
///                                        "-" is M_{p^3} (Q_8 at p = 2)
///   product       {"factors": [{"family", "params"}, ...]}
/// Throws GroupError on parameters out of range.
CorpusEntry make(const std::string &family, const nlohmann::json &params);

/// The fixed verification corpus for p in {2, 3, 5}.
std::vector<CorpusEntry> default_corpus(std::uint32_t p);

nlohmann::json group_to_json(const PcGroup &G);
PcGroup group_from_json(const nlohmann::json &j, const ValidateOptions &opts = {});
PcGroup load_group(const std::filesystem::path &file, const ValidateOptions &opts = {});

/// Writes one group file per entry and manifest.json into dir.
void write_corpus(const std::vector<CorpusEntry> &entries, std::uint32_t p,
                  const std::filesystem::path &dir);

struct CorpusFile {
  std::string file;  // relative to the corpus directory
  std::string family;
  nlohmann::json params;
};
/// Group files of a corpus directory (manifest order, else name order)
/// without loading them.
std::vector<CorpusFile> list_corpus(const std::filesystem::path &dir);

struct LoadedEntry {
  std::string file;
  PcGroup group;
  std::string family;
  nlohmann::json params;
};
/// Reads manifest.json if present, otherwise every *.json group file in dir
/// in name order.
std::vector<LoadedEntry> load_corpus(const std::filesystem::path &dir,
                                     const ValidateOptions &opts = {});

}  // namespace pcoh

#endif
