#include "app/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo::app {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

class Reader {
 public:
  Reader(std::string source, fs::path base) : source_(std::move(source)), base_(std::move(base)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw Error(source_ + ": " + key + ": " + msg);
  }

  std::uint64_t u64(const std::string& key, const std::string& v) const {
    std::uint64_t out = 0;
    const auto s = text::trim(v);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) fail(key, "expected a non-negative integer, got '" + v + "'");
    return out;
  }

  std::size_t size(const std::string& key, const std::string& v) const { return static_cast<std::size_t>(u64(key, v)); }

  double real(const std::string& key, const std::string& v) const {
    const auto s = std::string(text::trim(v));
    try {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(d)) throw std::invalid_argument(s);
      return d;
    } catch (const std::logic_error&) {
      fail(key, "expected a number, got '" + v + "'");
    }
  }

  bool flag(const std::string& key, const std::string& v) const {
    std::string s(text::trim(v));
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "on" || s == "true" || s == "yes" || s == "1") return true;
    if (s == "off" || s == "false" || s == "no" || s == "0") return false;
    fail(key, "expected on/off, got '" + v + "'");
  }

  fs::path path(const std::string& v) const {
    fs::path p(std::string(text::trim(v)));
    return p.is_absolute() ? p : (base_ / p).lexically_normal();
  }

  fs::path existing(const std::string& key, const std::string& v) const {
    auto p = path(v);
    if (!fs::exists(p)) fail(key, "path does not exist: " + p.string());
    return p;
  }

 private:
  std::string source_;
  fs::path base_;
};

const std::set<std::string>& top_level_keys() {
  static const std::set<std::string> k{"seed", "output", "corpus", "matrix"};
  return k;
}

const std::map<std::string, std::set<std::string>>& section_keys() {
  static const std::map<std::string, std::set<std::string>> k{
      {"chunk", {"target_tokens", "min_tokens"}},
      {"features",
       {"lexical", "syntactic", "readability", "concreteness", "ngram", "repetition", "rhythm", "translatability",
        "misc"}},
      {"repetition", {"aa", "aaa", "abab", "aabb"}},
      {"lexical", {"sttr_window", "mtld_threshold"}},
      {"readability", {"richness_top"}},
      {"ngram", {"per_bucket", "min_count"}},
      {"lexicons", {lexicon_keys().begin(), lexicon_keys().end()}},
      {"select", {"k"}},
      {"cv", {"folds", "grouping"}},
      {"classifier",
       {"nb_var_floor", "lr_lambda", "lr_max_iter", "lr_tol", "svm_c", "svm_epochs", "dt_min_split", "rf_trees"}},
      {"cluster",
       {"k", "n_init", "max_iter", "tol", "sweep", "mfw", "mfw_unit", "delta", "eder_offset", "linkage"}},
      {"stats", {"alpha", "min_n", "features"}},
  };
  return k;
}

}  // namespace

const std::vector<std::string>& lexicon_keys() {
  static const std::vector<std::string> k{"pinyin",   "concreteness",        "onomatopoeia",   "strong_modifiers",
                                          "particles", "er_stoplist",        "repetition_stoplist", "untranslatable",
                                          "idioms",    "reference"};
  return k;
}

RunConfig parse_config(const std::string& text, const fs::path& base_dir, const std::string& source_name) {
  pt::ptree tree;
  {
    std::istringstream in(text);
    try {
      pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ParseError(source_name, e.line(), e.message());
    }
  }
  Reader rd(source_name, base_dir);
  RunConfig cfg;
  cfg.hash = [&] {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(text::fnv1a64(text)));
    return std::string(buf);
  }();
  bool have_seed = false;

  for (const auto& [name, node] : tree) {
    const bool is_section = section_keys().count(name) > 0;
    if (!is_section) {
      if (!top_level_keys().count(name) || !node.empty()) rd.fail(name, "unknown key or section");
      const std::string v = node.data();
      if (name == "seed") {
        cfg.seed = rd.u64(name, v);
        have_seed = true;
      } else if (name == "output") {
        cfg.output = rd.path(v);
      } else if (name == "corpus") {
        for (const auto& p : text::split_list(v)) cfg.corpus.push_back(rd.existing(name, p));
      } else if (name == "matrix") {
        cfg.matrix = rd.existing(name, v);
      }
      continue;
    }
    const auto& allowed = section_keys().at(name);
    for (const auto& [key, leaf] : node) {
      const std::string full = name + "." + key;
      if (!allowed.count(key)) rd.fail(full, "unknown key");
      const std::string v = leaf.data();
      if (name == "chunk") {
        (key == "target_tokens" ? cfg.chunk.target_tokens : cfg.chunk.min_tokens) = rd.size(full, v);
      } else if (name == "features") {
        if (key == "concreteness") {
          cfg.extraction.concreteness = rd.flag(full, v);
        } else {
          cfg.extraction.set(*parse_family(key), rd.flag(full, v));
        }
      } else if (name == "repetition") {
        const bool b = rd.flag(full, v);
        if (key == "aa") cfg.extraction.aa = b;
        if (key == "aaa") cfg.extraction.aaa = b;
        if (key == "abab") cfg.extraction.abab = b;
        if (key == "aabb") cfg.extraction.aabb = b;
      } else if (name == "lexical") {
        if (key == "sttr_window") cfg.extraction.lexical.sttr_window = rd.size(full, v);
        if (key == "mtld_threshold") cfg.extraction.lexical.mtld_threshold = rd.real(full, v);
      } else if (name == "readability") {
        cfg.extraction.readability.richness_top = rd.size(full, v);
      } else if (name == "ngram") {
        if (key == "per_bucket") cfg.extraction.keyness.per_bucket = rd.size(full, v);
        if (key == "min_count") cfg.extraction.keyness.min_count = static_cast<std::int64_t>(rd.u64(full, v));
      } else if (name == "lexicons") {
        cfg.lexicons[key] = rd.existing(full, v);
      } else if (name == "select") {
        cfg.select_k = rd.size(full, v);
      } else if (name == "cv") {
        if (key == "folds") cfg.cv.folds = rd.size(full, v);
        if (key == "grouping") {
          const auto g = text::trim(v);
          if (g == "document") {
            cfg.cv.grouping = Grouping::Document;
          } else if (g == "chunk") {
            cfg.cv.grouping = Grouping::Chunk;
          } else {
            rd.fail(full, "expected document or chunk");
          }
        }
      } else if (name == "classifier") {
        auto& hp = cfg.hp;
        if (key == "nb_var_floor") hp.nb_var_floor = rd.real(full, v);
        if (key == "lr_lambda") hp.lr_lambda = rd.real(full, v);
        if (key == "lr_max_iter") hp.lr_max_iter = rd.size(full, v);
        if (key == "lr_tol") hp.lr_tol = rd.real(full, v);
        if (key == "svm_c") hp.svm_c = rd.real(full, v);
        if (key == "svm_epochs") hp.svm_epochs = rd.size(full, v);
        if (key == "dt_min_split") hp.dt_min_split = rd.size(full, v);
        if (key == "rf_trees") hp.rf_trees = rd.size(full, v);
      } else if (name == "cluster") {
        auto& c = cfg.cluster;
        if (key == "k") c.kmeans.k = rd.size(full, v);
        if (key == "n_init") c.kmeans.n_init = rd.size(full, v);
        if (key == "max_iter") c.kmeans.max_iter = rd.size(full, v);
        if (key == "tol") c.kmeans.tol = rd.real(full, v);
        if (key == "sweep") {
          c.sweep.clear();
          for (const auto& s : text::split_list(v)) c.sweep.push_back(rd.size(full, s));
          if (c.sweep.empty()) rd.fail(full, "empty k range");
        }
        if (key == "mfw") c.mfw = rd.size(full, v);
        if (key == "mfw_unit") {
          const auto u = text::trim(v);
          if (u == "word") {
            c.mfw_unit = MfwUnit::Word;
          } else if (u == "char") {
            c.mfw_unit = MfwUnit::Char;
          } else {
            rd.fail(full, "expected word or char");
          }
        }
        if (key == "delta") {
          const auto d = text::trim(v);
          if (d == "eder") {
            c.delta.kind = DeltaKind::Eder;
          } else if (d == "burrows") {
            c.delta.kind = DeltaKind::Burrows;
          } else {
            rd.fail(full, "expected eder or burrows");
          }
        }
        if (key == "eder_offset") c.delta.eder_offset = rd.real(full, v);
        if (key == "linkage") {
          const auto l = text::trim(v);
          if (l == "average") {
            c.linkage = Linkage::Average;
          } else if (l == "single") {
            c.linkage = Linkage::Single;
          } else if (l == "complete") {
            c.linkage = Linkage::Complete;
          } else {
            rd.fail(full, "expected average, single or complete");
          }
        }
      } else if (name == "stats") {
        if (key == "alpha") cfg.stats.alpha = rd.real(full, v);
        if (key == "min_n") cfg.stats.min_n = rd.size(full, v);
        if (key == "features") cfg.stats.features = text::split_list(v);
      }
    }
  }

  if (!have_seed) rd.fail("seed", "missing (a seed is mandatory)");
  if (cfg.corpus.empty() && !cfg.matrix) rd.fail("corpus", "no corpus or matrix given");
  if (cfg.chunk.min_tokens < 1 || cfg.chunk.target_tokens < cfg.chunk.min_tokens) {
    rd.fail("chunk", "need 1 <= min_tokens <= target_tokens");
  }
  if (cfg.cv.folds < 2) rd.fail("cv.folds", "must be >= 2");
  if (cfg.cluster.kmeans.k < 1) rd.fail("cluster.k", "must be >= 1");
  if (cfg.cluster.mfw < 1) rd.fail("cluster.mfw", "must be >= 1");
  if (!(cfg.stats.alpha > 0.0 && cfg.stats.alpha < 1.0)) rd.fail("stats.alpha", "must be in (0, 1)");
  try {
    cfg.hp.validate();
  } catch (const Error& e) {
    rd.fail("classifier", e.what());
  }
  cfg.set_seed(cfg.seed);

  // Lexicon coverage is checked up front so a missing file fails before any
  // corpus work. Only relevant when features are extracted here.
  if (!cfg.corpus.empty() && !cfg.matrix) {
    std::vector<std::string> missing;
    const auto need = [&](const char* key) {
      if (!cfg.lexicons.count(key)) missing.push_back(key);
    };
    const auto& x = cfg.extraction;
    if (x.on(Family::Readability) || x.on(Family::Ngram)) need("reference");
    if (x.on(Family::Readability) && x.concreteness) need("concreteness");
    if (x.on(Family::Rhythm)) need("pinyin");
    if (x.on(Family::Misc)) {
      need("onomatopoeia");
      need("strong_modifiers");
      need("particles");
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      rd.fail("lexicons", "enabled features require missing lexicon(s): " + list);
    }
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  auto cfg = parse_config(ss.str(), path.parent_path().empty() ? fs::path(".") : path.parent_path(), path.string());
  cfg.source = path;
  return cfg;
}

LexiconBundle load_lexicons(const RunConfig& cfg) {
  LexiconBundle b;
  const auto get = [&](const char* key) -> const fs::path* {
    const auto it = cfg.lexicons.find(key);
    return it == cfg.lexicons.end() ? nullptr : &it->second;
  };
  if (auto p = get("pinyin")) b.pinyin = PinyinLexicon::load(p->string());
  if (auto p = get("concreteness")) b.concreteness = ScalarLexicon::load(p->string(), "concreteness");
  if (auto p = get("onomatopoeia")) b.onomatopoeia = WordList::load(p->string(), "onomatopoeia");
  if (auto p = get("strong_modifiers")) b.strong_modifiers = WordList::load(p->string(), "strong_modifiers");
  if (auto p = get("particles")) b.sentence_final_particles = WordList::load(p->string(), "particles");
  if (auto p = get("er_stoplist")) b.er_stoplist = WordList::load(p->string(), "er_stoplist");
  if (auto p = get("repetition_stoplist")) b.repetition_stoplist = WordList::load(p->string(), "repetition_stoplist");
  if (auto p = get("untranslatable")) b.untranslatable = WordList::load(p->string(), "untranslatable");
  if (auto p = get("idioms")) b.idioms = WordList::load(p->string(), "idioms");
  if (auto p = get("reference")) b.reference = RefNgramTable::load(p->string());
  const auto missing = missing_resources(cfg.extraction, b);
  if (!missing.empty()) throw Error("config: enabled features require missing lexicon: " + missing.front());
  return b;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["config_hash"] = hash;
  j["chunk"] = {{"target_tokens", chunk.target_tokens}, {"min_tokens", chunk.min_tokens}};
  nlohmann::json fam = nlohmann::json::object();
  for (auto f : kAllFamilies) fam[std::string(family_name(f))] = extraction.on(f);
  fam["concreteness"] = extraction.concreteness;
  j["features"] = fam;
  j["repetition"] = {{"aa", extraction.aa}, {"aaa", extraction.aaa}, {"abab", extraction.abab}, {"aabb", extraction.aabb}};
  j["lexical"] = {{"sttr_window", extraction.lexical.sttr_window}, {"mtld_threshold", extraction.lexical.mtld_threshold}};
  j["readability"] = {{"richness_top", extraction.readability.richness_top}};
  j["ngram"] = {{"per_bucket", extraction.keyness.per_bucket}, {"min_count", extraction.keyness.min_count}};
  j["select"] = {{"k", select_k}};
  j["cv"] = {{"folds", cv.folds}, {"grouping", cv.grouping == Grouping::Document ? "document" : "chunk"}, {"seed", cv.seed}};
  j["classifier"] = {{"nb_var_floor", hp.nb_var_floor}, {"lr_lambda", hp.lr_lambda},   {"lr_max_iter", hp.lr_max_iter},
                     {"lr_tol", hp.lr_tol},             {"svm_c", hp.svm_c},           {"svm_epochs", hp.svm_epochs},
                     {"dt_min_split", hp.dt_min_split}, {"rf_trees", hp.rf_trees}};
  const auto& c = cluster;
  j["cluster"] = {{"k", c.kmeans.k},
                  {"n_init", c.kmeans.n_init},
                  {"max_iter", c.kmeans.max_iter},
                  {"tol", c.kmeans.tol},
                  {"seed", c.kmeans.seed},
                  {"sweep", c.sweep},
                  {"mfw", c.mfw},
                  {"mfw_unit", c.mfw_unit == MfwUnit::Word ? "word" : "char"},
                  {"delta", c.delta.kind == DeltaKind::Eder ? "eder" : "burrows"},
                  {"eder_offset", c.delta.eder_offset},
                  {"linkage", c.linkage == Linkage::Average ? "average" : c.linkage == Linkage::Single ? "single" : "complete"}};
  j["stats"] = {{"alpha", stats.alpha}, {"min_n", stats.min_n}, {"features", stats.features}};
  return j;
}

}  // namespace cttstylo::app
