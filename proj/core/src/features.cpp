#include "cttstylo/features.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

#include "cttstylo/csv.hpp"
#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Lexical: return "lexical";
    case Family::Syntactic: return "syntactic";
    case Family::Readability: return "readability";
    case Family::Ngram: return "ngram";
    case Family::Repetition: return "repetition";
    case Family::Rhythm: return "rhythm";
    case Family::Translatability: return "translatability";
    case Family::Misc: return "misc";
  }
  return "";
}

std::optional<Family> parse_family(std::string_view name) {
  for (auto f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

bool is_generic(Family f) {
  return f == Family::Lexical || f == Family::Syntactic || f == Family::Readability || f == Family::Ngram;
}

std::optional<Family> family_of(std::string_view n) {
  if (n.starts_with("lex_")) return Family::Lexical;
  if (n.starts_with("syn_")) return Family::Syntactic;
  if (n.starts_with("rdprx_") || n.starts_with("conc_")) return Family::Readability;
  if (n.starts_with("word_") || n.starts_with("pos_")) return Family::Ngram;
  if (n.starts_with("rep_")) return Family::Repetition;
  if (n.starts_with("rhy_")) return Family::Rhythm;
  if (n.starts_with("trans_")) return Family::Translatability;
  if (n.starts_with("misc_")) return Family::Misc;
  return std::nullopt;
}

std::string_view provenance_of(std::string_view n) { return n.starts_with("rdprx_") ? "proxy" : "measured"; }

std::vector<std::string> missing_resources(const ExtractionConfig& cfg, const LexiconBundle& lex) {
  std::vector<std::string> missing;
  if ((cfg.on(Family::Readability) || cfg.on(Family::Ngram)) && !lex.reference) missing.emplace_back("reference");
  if (cfg.on(Family::Readability) && cfg.concreteness && !lex.concreteness) missing.emplace_back("concreteness");
  if (cfg.on(Family::Rhythm) && !lex.pinyin) missing.emplace_back("pinyin");
  if (cfg.on(Family::Misc)) {
    if (!lex.onomatopoeia) missing.emplace_back("onomatopoeia");
    if (!lex.strong_modifiers) missing.emplace_back("strong_modifiers");
    if (!lex.sentence_final_particles) missing.emplace_back("particles");
  }
  return missing;
}

namespace {

const WordList* ptr(const std::optional<WordList>& w) { return w ? &*w : nullptr; }

void check_values(const FeatureVector& fv, Family f, const std::string& sample_id) {
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (!std::isfinite(fv.values[i]) || fv.values[i] < 0.0) {
      throw Error(std::string(family_name(f)) + ": sample " + sample_id + ": feature " + fv.names[i] +
                  " has invalid value " + text::format_double(fv.values[i]));
    }
  }
}

}  // namespace

FeatureVector extract_sample(const Chunk& sample, const LexiconBundle& lex, const ExtractionConfig& cfg,
                             std::span<const NgramSpec> ngram_specs) {
  const std::span<const Sentence> s = sample.sentences;
  const std::string id = sample.sample_id();
  FeatureVector out;
  out.sample_id = id;
  out.group = sample.group;

  auto run = [&](Family f, auto&& extractor) {
    FeatureVector part;
    try {
      part = extractor();
    } catch (const std::exception& e) {
      throw Error(std::string(family_name(f)) + ": sample " + id + ": " + e.what());
    }
    check_values(part, f, id);
    out.append(part);
  };

  if (cfg.on(Family::Lexical)) {
    run(Family::Lexical, [&] {
      auto fv = lexical_diversity_features(s, cfg.lexical);
      fv.append(pos_ratio_features(s, cfg.tags, ptr(lex.idioms)));
      return fv;
    });
  }
  if (cfg.on(Family::Syntactic)) run(Family::Syntactic, [&] { return syntactic_features(s, cfg.deprels); });
  if (cfg.on(Family::Readability)) {
    run(Family::Readability, [&] {
      auto fv = readability_features(s, *lex.reference, cfg.tags, cfg.readability);
      if (cfg.concreteness) fv.append(concreteness_features(s, *lex.concreteness));
      return fv;
    });
  }
  if (cfg.on(Family::Ngram)) run(Family::Ngram, [&] { return ngram_feature_values(s, ngram_specs); });
  if (cfg.on(Family::Repetition)) {
    run(Family::Repetition, [&] {
      RepetitionConfig rc{ptr(lex.repetition_stoplist), cfg.aa, cfg.aaa, cfg.abab, cfg.aabb};
      return repetition_features(s, rc);
    });
  }
  if (cfg.on(Family::Rhythm)) run(Family::Rhythm, [&] { return rhythm_features(s, *lex.pinyin); });
  if (cfg.on(Family::Translatability)) {
    run(Family::Translatability, [&] { return translatability_features(s, ptr(lex.untranslatable)); });
  }
  if (cfg.on(Family::Misc)) {
    run(Family::Misc, [&] {
      MiscLexicons ml{ptr(lex.onomatopoeia), ptr(lex.strong_modifiers), ptr(lex.sentence_final_particles),
                      ptr(lex.er_stoplist)};
      return misc_features(s, ml);
    });
  }
  return out;
}

ExtractionResult extract_features(std::span<const Chunk> samples, const LexiconBundle& lex,
                                  const ExtractionConfig& cfg) {
  if (samples.empty()) throw Error("extract: no samples");
  const auto missing = missing_resources(cfg, lex);
  if (!missing.empty()) throw Error("extract: missing resource '" + missing.front() + "'");
  RepetitionConfig{ptr(lex.repetition_stoplist)}.validate();

  ExtractionResult result;
  if (cfg.on(Family::Ngram)) {
    try {
      result.ngram_specs = ngram_keyness_select(samples, *lex.reference, cfg.keyness);
    } catch (const std::exception& e) {
      throw Error(std::string("ngram: ") + e.what());
    }
  }

  std::vector<FeatureVector> rows;
  rows.reserve(samples.size());
  for (const auto& c : samples) rows.push_back(extract_sample(c, lex, cfg, result.ngram_specs));

  auto& m = result.matrix;
  m.features = rows.front().names;
  std::set<std::string> unique(m.features.begin(), m.features.end());
  if (unique.size() != m.features.size()) throw Error("extract: duplicate feature names");
  m.values = Matrix(rows.size(), m.features.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].names != m.features) throw Error("extract: feature order differs for sample " + rows[i].sample_id);
    std::copy(rows[i].values.begin(), rows[i].values.end(), m.values.row(i).begin());
    const auto& c = samples[i];
    m.samples.push_back({c.sample_id(), c.parent_doc, c.engine, c.group, c.token_count, c.undersized});
    for (const auto& f : rows[i].flags) result.flags.emplace_back(rows[i].sample_id, f);
    if (c.undersized) result.flags.emplace_back(rows[i].sample_id, "undersized");
  }
  return result;
}

void write_matrix_csv(std::ostream& out, const FeatureMatrix& m) {
  std::vector<std::string> row{"sample_id", "group"};
  row.insert(row.end(), m.features.begin(), m.features.end());
  csv::write_row(out, row);
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    row.assign({m.samples[i].id, std::string(group_name(m.samples[i].group))});
    for (double v : m.values.row(i)) row.push_back(text::format_double(v));
    csv::write_row(out, row);
  }
}

nlohmann::json matrix_metadata(const ExtractionResult& r) {
  nlohmann::json meta;
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : r.matrix.features) {
    const auto fam = family_of(f);
    features.push_back({{"name", f},
                        {"family", fam ? std::string(family_name(*fam)) : std::string("unknown")},
                        {"level", fam && is_generic(*fam) ? "generic" : "ctt"},
                        {"provenance", std::string(provenance_of(f))}});
  }
  meta["features"] = std::move(features);
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.matrix.samples) {
    samples.push_back({{"id", s.id},
                       {"document", s.document},
                       {"engine", s.engine},
                       {"group", std::string(group_name(s.group))},
                       {"tokens", s.tokens},
                       {"undersized", s.undersized}});
  }
  meta["samples"] = std::move(samples);
  nlohmann::json ngrams = nlohmann::json::array();
  for (const auto& spec : r.ngram_specs) {
    ngrams.push_back({{"name", spec.feature_name()},
                      {"kind", std::string(unit_kind_name(spec.kind))},
                      {"n", spec.n},
                      {"gram", spec.gram},
                      {"g2", spec.keyness},
                      {"corpus_count", spec.corpus_count},
                      {"reference_count", spec.reference_count}});
  }
  meta["ngrams"] = std::move(ngrams);
  nlohmann::json flags = nlohmann::json::array();
  for (const auto& [sample, flag] : r.flags) flags.push_back({{"sample", sample}, {"flag", flag}});
  meta["flags"] = std::move(flags);
  return meta;
}

FeatureMatrix read_matrix_csv(std::istream& in, const nlohmann::json* metadata) {
  std::vector<std::string> row;
  if (!csv::read_row(in, row) || row.size() < 2 || row[0] != "sample_id" || row[1] != "group") {
    throw Error("feature matrix: expected header 'sample_id,group,...'");
  }
  FeatureMatrix m;
  m.features.assign(row.begin() + 2, row.end());
  std::vector<double> data;
  std::size_t line = 1;
  while (csv::read_row(in, row)) {
    ++line;
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != m.features.size() + 2) throw ParseError("feature matrix", line, "wrong column count");
    SampleInfo info;
    info.id = row[0];
    const auto g = parse_group(row[1]);
    if (!g) throw ParseError("feature matrix", line, "unknown group '" + row[1] + "'");
    info.group = *g;
    const auto colon = info.id.rfind(':');
    info.document = colon == std::string::npos ? info.id : info.id.substr(0, colon);
    info.engine = info.document;
    for (std::size_t j = 2; j < row.size(); ++j) {
      char* end = nullptr;
      const double v = std::strtod(row[j].c_str(), &end);
      if (end == row[j].c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ParseError("feature matrix", line, "bad value '" + row[j] + "'");
      }
      data.push_back(v);
    }
    m.samples.push_back(std::move(info));
  }
  m.values = Matrix(m.samples.size(), m.features.size(), std::move(data));
  if (metadata && metadata->contains("samples")) {
    std::unordered_map<std::string, const nlohmann::json*> by_id;
    for (const auto& s : (*metadata)["samples"]) by_id[s.at("id").get<std::string>()] = &s;
    for (auto& s : m.samples) {
      const auto it = by_id.find(s.id);
      if (it == by_id.end()) continue;
      const auto& j = *it->second;
      s.document = j.value("document", s.document);
      s.engine = j.value("engine", s.engine);
      s.tokens = j.value("tokens", std::size_t{0});
      s.undersized = j.value("undersized", false);
    }
  }
  return m;
}

}  // namespace cttstylo
