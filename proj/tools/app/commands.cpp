#include "app/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "cttstylo/csv.hpp"
#include "cttstylo/error.hpp"
#include "cttstylo/rng.hpp"
#include "cttstylo/stats.hpp"
#include "cttstylo/text.hpp"

#ifndef CTTSTYLO_VERSION
#define CTTSTYLO_VERSION "0.0.0"
#endif

namespace cttstylo::app {

namespace fs = std::filesystem;
using nlohmann::json;

void CommandContext::warn(const std::string& msg) {
  warnings.push_back(msg);
  *log << "warning: " << msg << '\n';
}

void CommandContext::info(const std::string& msg) const { *log << msg << '\n'; }

CommandContext make_context(const fs::path& config_path, const std::optional<fs::path>& out,
                            const std::optional<std::uint64_t>& seed, std::ostream& log) {
  CommandContext ctx{load_config(config_path), {}, &log, {}};
  if (seed) ctx.config.set_seed(*seed);
  ctx.out = out ? *out : ctx.config.output;
  return ctx;
}

namespace {

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return s;
}

std::string file_hash(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(text::fnv1a64(ss.str()));
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

class Manifest {
 public:
  Manifest(const CommandContext& ctx, std::string command) : command_(std::move(command)) {
    j_["tool"] = "cttstylo";
    j_["version"] = CTTSTYLO_VERSION;
    j_["command"] = command_;
    j_["config"] = ctx.config.to_json();
    json inputs = json::array();
    for (const auto& p : ctx.config.corpus) inputs.push_back({{"file", p.filename().string()}, {"fnv1a64", file_hash(p)}});
    if (ctx.config.matrix) {
      inputs.push_back({{"file", ctx.config.matrix->filename().string()}, {"fnv1a64", file_hash(*ctx.config.matrix)}});
    }
    for (const auto& [key, p] : ctx.config.lexicons) {
      inputs.push_back({{"lexicon", key}, {"file", p.filename().string()}, {"fnv1a64", file_hash(p)}});
    }
    j_["inputs"] = std::move(inputs);
    j_["outputs"] = json::array();
  }

  void output(const std::string& name) { j_["outputs"].push_back(name); }
  json& operator[](const char* key) { return j_[key]; }

  void write(const CommandContext& ctx) {
    j_["warnings"] = ctx.warnings;
    auto f = open_out(ctx.out / ("manifest_" + command_ + ".json"));
    f << j_.dump(2) << '\n';
  }

 private:
  std::string command_;
  json j_;
};

std::vector<Chunk> chunk_all(const RunConfig& cfg, const std::vector<Document>& docs) {
  std::vector<Chunk> out;
  for (const auto& d : docs) {
    auto c = chunk_document(d, cfg.chunk);
    out.insert(out.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  }
  return out;
}

ExtractionResult run_extraction(CommandContext& ctx, const std::vector<Document>& docs) {
  const auto lex = load_lexicons(ctx.config);
  const auto chunks = chunk_all(ctx.config, docs);
  if (chunks.empty()) throw Error("extract: corpus has no samples");
  auto r = extract_features(chunks, lex, ctx.config.extraction);
  std::map<std::string, std::size_t> per_family;
  for (const auto& f : r.matrix.features) {
    const auto fam = family_of(f);
    ++per_family[fam ? std::string(family_name(*fam)) : "unknown"];
  }
  std::ostringstream line;
  line << "extracted " << r.matrix.features.size() << " features over " << r.matrix.samples.size() << " samples:";
  for (auto f : kAllFamilies) {
    const auto it = per_family.find(std::string(family_name(f)));
    line << ' ' << family_name(f) << '=' << (it == per_family.end() ? 0 : it->second);
  }
  ctx.info(line.str());
  return r;
}

void write_csv_matrix(const fs::path& p, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  auto f = open_out(p);
  csv::write_row(f, header);
  for (const auto& r : rows) csv::write_row(f, r);
}

std::vector<std::size_t> rows_in(const FeatureMatrix& m, const std::vector<Group>& groups) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    if (std::find(groups.begin(), groups.end(), m.samples[i].group) != groups.end()) out.push_back(i);
  }
  return out;
}

}  // namespace

const std::vector<GroupPair>& group_pairs() {
  static const std::vector<GroupPair> p{
      {"HT-MT", {Group::HT}, {Group::NMT, Group::LLM}},
      {"HT-NMT", {Group::HT}, {Group::NMT}},
      {"HT-LLM", {Group::HT}, {Group::LLM}},
      {"NMT-LLM", {Group::NMT}, {Group::LLM}},
  };
  return p;
}

std::vector<Document> load_documents(const RunConfig& cfg) {
  std::vector<Document> docs;
  std::set<std::string> ids;
  for (const auto& p : cfg.corpus) {
    for (auto& d : load_corpus_file(p.string())) {
      if (!ids.insert(d.id).second) throw Error("corpus: duplicate document id '" + d.id + "' in " + p.string());
      docs.push_back(std::move(d));
    }
  }
  return docs;
}

FeatureMatrix obtain_matrix(CommandContext& ctx, const std::vector<Document>& docs) {
  if (ctx.config.matrix) {
    const auto& p = *ctx.config.matrix;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open matrix " + p.string());
    auto side = p;
    side.replace_extension(".json");
    if (fs::exists(side)) {
      std::ifstream js(side);
      const json meta = json::parse(js);
      return read_matrix_csv(in, &meta);
    }
    return read_matrix_csv(in);
  }
  return run_extraction(ctx, docs).matrix;
}

void cmd_extract(CommandContext& ctx) {
  if (ctx.config.corpus.empty()) throw Error("extract: config names no corpus");
  fs::create_directories(ctx.out);
  const auto docs = load_documents(ctx.config);
  const auto r = run_extraction(ctx, docs);
  Manifest man(ctx, "extract");
  {
    auto f = open_out(ctx.out / "matrix.csv");
    write_matrix_csv(f, r.matrix);
  }
  {
    auto f = open_out(ctx.out / "matrix.json");
    f << matrix_metadata(r).dump(2) << '\n';
  }
  man.output("matrix.csv");
  man.output("matrix.json");
  man["documents"] = docs.size();
  man["samples"] = r.matrix.samples.size();
  man["features"] = r.matrix.features.size();
  man.write(ctx);
}

void cmd_classify(CommandContext& ctx) {
  fs::create_directories(ctx.out);
  const auto docs = ctx.config.matrix ? std::vector<Document>{} : load_documents(ctx.config);
  const FeatureMatrix m = obtain_matrix(ctx, docs);
  const auto& cfg = ctx.config;
  Manifest man(ctx, "classify");

  struct Sublevel {
    std::string level, name;
    std::vector<std::string> features;
  };
  std::vector<Sublevel> sublevels;
  for (auto f : kAllFamilies) {
    Sublevel s{is_generic(f) ? "generic" : "ctt", std::string(family_name(f)), {}};
    for (const auto& name : m.features) {
      if (family_of(name) == f) s.features.push_back(name);
    }
    sublevels.push_back(std::move(s));
  }
  sublevels.push_back({"all", "all", m.features});

  std::vector<Table2Row> rows;
  json folds = json::object();
  for (const auto& sl : sublevels) {
    if (sl.features.empty()) {
      ctx.warn("sub-level " + sl.name + ": no features, row skipped");
      continue;
    }
    for (const auto& gp : group_pairs()) {
      const auto ra = rows_in(m, gp.first), rb = rows_in(m, gp.second);
      if (ra.empty() || rb.empty()) {
        ctx.warn(sl.name + " " + gp.name + ": a group is absent, skipped");
        continue;
      }
      std::vector<std::size_t> idx(ra);
      idx.insert(idx.end(), rb.begin(), rb.end());
      std::sort(idx.begin(), idx.end());
      std::vector<int> y;
      std::vector<std::string> documents;
      for (auto i : idx) {
        y.push_back(std::find(gp.first.begin(), gp.first.end(), m.samples[i].group) != gp.first.end() ? 0 : 1);
        documents.push_back(m.samples[i].document);
      }
      const FeatureMatrix sub = m.select_samples(idx).select_features(sl.features);
      try {
        const auto ranked = chi_square_scores(sub, y);
        const auto top = select_top_k(ranked, cfg.select_k);
        CvPlan plan = cfg.cv;
        plan.seed = derive_seed(cfg.seed, text::fnv1a64(sl.name + "/" + gp.name));
        const auto res = ensemble_accuracy(sub.select_features(top).values, y, documents, plan, cfg.hp);
        for (const auto& kr : res.per_kind) {
          for (const auto& w : kr.warnings) ctx.warn(sl.name + " " + gp.name + ": " + w);
        }
        rows.push_back({sl.level, sl.name, gp.name, res.mean});
        if (sl.name == "all") {
          std::vector<std::vector<std::string>> out;
          for (std::size_t r = 0; r < ranked.size(); ++r) {
            out.push_back({std::to_string(r + 1), ranked[r].name, text::format_double(ranked[r].chi2)});
          }
          const std::string file = "chi2_" + gp.name + ".csv";
          write_csv_matrix(ctx.out / file, {"rank", "feature", "chi2"}, out);
          man.output(file);
          json f = json::object();
          for (std::size_t k = 0; k < idx.size(); ++k) f[sub.samples[k].id] = res.folds[k];
          json per_kind = json::object();
          for (std::size_t k = 0; k < kAllClassifiers.size(); ++k) {
            per_kind[std::string(classifier_name(kAllClassifiers[k]))] = res.per_kind[k].mean;
          }
          folds[gp.name] = {{"seed", plan.seed}, {"selected", top}, {"per_classifier", per_kind}, {"folds", f}};
        }
      } catch (const Error& e) {
        ctx.warn(sl.name + " " + gp.name + ": " + e.what() + ", skipped");
      }
    }
  }
  {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows) out.push_back({r.level, r.sublevel, r.pair, text::format_double(r.acc)});
    write_csv_matrix(ctx.out / "table2.csv", {"level", "sublevel", "pair", "acc"}, out);
    man.output("table2.csv");
  }
  man["all_rows"] = std::move(folds);

  try {
    CvPlan plan{cfg.cv.folds, cfg.seed, Grouping::Chunk};
    const auto pm = pairwise_matrix(m, m.features, plan, cfg.hp, cfg.select_k);
    std::vector<std::string> header{"engine"};
    header.insert(header.end(), pm.engines.begin(), pm.engines.end());
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < pm.engines.size(); ++i) {
      std::vector<std::string> row{pm.engines[i]};
      for (std::size_t j = 0; j < pm.engines.size(); ++j) {
        row.push_back(pm.accuracy[i][j] ? text::format_double(*pm.accuracy[i][j]) : "");
      }
      out.push_back(std::move(row));
    }
    write_csv_matrix(ctx.out / "pairwise.csv", header, out);
    man.output("pairwise.csv");
    for (const auto& n : pm.notes) ctx.warn("pairwise: " + n);
    json seeds = json::object();
    for (std::size_t i = 0; i < pm.engines.size(); ++i) {
      for (std::size_t j = i + 1; j < pm.engines.size(); ++j) {
        seeds[pm.engines[i] + "|" + pm.engines[j]] = pair_seed(cfg.seed, pm.engines[i], pm.engines[j]);
      }
    }
    man["pairwise_seeds"] = std::move(seeds);
  } catch (const Error& e) {
    ctx.warn(std::string("pairwise matrix not written: ") + e.what());
  }
  ctx.info("classify: " + std::to_string(rows.size()) + " table rows");
  man.write(ctx);
}

void cmd_cluster(CommandContext& ctx) {
  fs::create_directories(ctx.out);
  const auto& cfg = ctx.config;
  const auto docs = cfg.corpus.empty() ? std::vector<Document>{} : load_documents(cfg);
  const FeatureMatrix m = obtain_matrix(ctx, docs);
  Manifest man(ctx, "cluster");
  if (m.samples.empty()) throw Error("cluster: matrix has no samples");

  // Headline labels: HT = 0, any machine group = 1.
  bool labeled = true;
  std::vector<int> truth;
  for (const auto& s : m.samples) {
    if (s.group == Group::Unlabeled) labeled = false;
    truth.push_back(s.group == Group::HT ? 0 : 1);
  }
  if (labeled && (std::count(truth.begin(), truth.end(), 0) == 0 || std::count(truth.begin(), truth.end(), 1) == 0)) {
    ctx.warn("only one of HT/MT present, ARI omitted");
    labeled = false;
  }
  if (!labeled) truth.clear();

  std::vector<std::string> features = m.features;
  if (labeled) features = select_top_k(chi_square_scores(m, truth), cfg.select_k);
  const FeatureMatrix sel = m.select_features(features);
  const auto z = zscore_columns(sel.values);
  KmeansParams kp = cfg.cluster.kmeans;
  if (kp.k > sel.samples.size()) throw Error("cluster: k exceeds the number of samples");
  const auto km = kmeans(z.z, kp);
  man["selected"] = features;
  man["inertia"] = km.inertia;
  man["iterations"] = km.iterations;

  {
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < sel.samples.size(); ++i) out.push_back({sel.samples[i].id, std::to_string(km.assignment[i])});
    write_csv_matrix(ctx.out / "assignments.csv", {"sample", "cluster"}, out);
    man.output("assignments.csv");
  }
  {
    std::vector<std::string> header{"sample_id"};
    header.insert(header.end(), features.begin(), features.end());
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < sel.samples.size(); ++i) {
      std::vector<std::string> row{sel.samples[i].id};
      for (double v : z.z.row(i)) row.push_back(text::format_double(v));
      out.push_back(std::move(row));
    }
    write_csv_matrix(ctx.out / "zscores.csv", header, out);
    man.output("zscores.csv");
  }
  if (labeled) {
    const double ari = adjusted_rand_index(truth, km.assignment);
    write_csv_matrix(ctx.out / "ari.csv", {"k", "ari"}, {{std::to_string(kp.k), text::format_double(ari)}});
    man.output("ari.csv");
    man["ari"] = ari;
  }
  {
    const auto rows = sweep_k(z.z, cfg.cluster.sweep, truth, kp);
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows) {
      out.push_back({std::to_string(r.k), r.ari ? text::format_double(*r.ari) : "", text::format_double(r.inertia)});
    }
    write_csv_matrix(ctx.out / "sweep.csv", {"k", "ari", "inertia"}, out);
    man.output("sweep.csv");
  }

  if (docs.size() < 2) {
    ctx.warn("dendrogram needs at least two corpus documents, skipped");
  } else {
    std::vector<std::string> ids;
    std::vector<std::vector<std::string>> units;
    for (const auto& d : docs) {
      ids.push_back(d.id);
      units.push_back(mfw_units(d, cfg.cluster.mfw_unit));
    }
    const auto table = mfw_table(ids, units, cfg.cluster.mfw);
    if (table.truncated) {
      ctx.warn("only " + std::to_string(table.words.size()) + " distinct units, fewer than mfw = " +
               std::to_string(cfg.cluster.mfw));
    }
    const auto dist = delta_matrix(table, cfg.cluster.delta);
    std::vector<std::string> header{"document"};
    header.insert(header.end(), ids.begin(), ids.end());
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::vector<std::string> row{ids[i]};
      for (double v : dist.row(i)) row.push_back(text::format_double(v));
      out.push_back(std::move(row));
    }
    write_csv_matrix(ctx.out / "distance.csv", header, out);
    const auto tree = agglomerative_cluster(dist, ids, cfg.cluster.linkage);
    auto f = open_out(ctx.out / "dendrogram.nwk");
    f << write_newick(*tree) << '\n';
    man.output("distance.csv");
    man.output("dendrogram.nwk");
    man["mfw_words"] = table.words;
  }
  ctx.info("cluster: k = " + std::to_string(kp.k) + ", inertia " + text::format_double(km.inertia));
  man.write(ctx);
}

void cmd_stats(CommandContext& ctx, const std::optional<std::vector<std::string>>& features) {
  fs::create_directories(ctx.out);
  const auto& cfg = ctx.config;
  const auto docs = cfg.matrix ? std::vector<Document>{} : load_documents(cfg);
  const FeatureMatrix m = obtain_matrix(ctx, docs);
  Manifest man(ctx, "stats");
  const auto& names = features ? *features : cfg.stats.features;

  std::vector<Group> present;
  for (auto g : {Group::HT, Group::NMT, Group::LLM}) {
    if (std::any_of(m.samples.begin(), m.samples.end(), [&](const SampleInfo& s) { return s.group == g; })) {
      present.push_back(g);
    }
  }
  if (!names.empty() && present.size() < 2) throw Error("stats: fewer than two labelled groups in the matrix");

  std::vector<std::vector<std::string>> out;
  for (const auto& name : names) {
    const auto col = m.feature_index(name);
    if (col == npos) {
      ctx.warn("stats: unknown feature " + name);
      out.push_back({name, "unknown", "", "", ""});
      continue;
    }
    std::vector<std::vector<double>> groups;
    for (auto g : present) {
      std::vector<double> v;
      for (std::size_t i = 0; i < m.samples.size(); ++i) {
        if (m.samples[i].group == g) v.push_back(m.values(i, col));
      }
      groups.push_back(std::move(v));
    }
    const auto gate = normality_gate(groups, cfg.stats.alpha, cfg.stats.min_n);
    std::string gate_text;
    if (gate.decision == GateDecision::Anova) {
      gate_text = "normal";
    } else {
      for (const auto& f : gate.flags) gate_text += (gate_text.empty() ? "" : ";") + f;
      if (gate_text.empty()) gate_text = "non-normal";
    }
    try {
      const bool anova = gate.decision == GateDecision::Anova;
      const auto r = anova ? anova_f(groups) : kruskal_wallis_h(groups);
      for (const auto& f : r.flags) gate_text += ";" + f;
      out.push_back({name, anova ? "anova" : "kruskal", text::format_double(r.stat), text::format_double(r.p), gate_text});
    } catch (const Error& e) {
      ctx.warn("stats: " + name + ": " + e.what());
      out.push_back({name, "error", "", "", gate_text});
    }
  }
  write_csv_matrix(ctx.out / "stats.csv", {"feature", "test", "stat", "p", "gate"}, out);
  man.output("stats.csv");
  man["groups"] = [&] {
    json g = json::array();
    for (auto x : present) g.push_back(std::string(group_name(x)));
    return g;
  }();
  man.write(ctx);
}

}  // namespace cttstylo::app
