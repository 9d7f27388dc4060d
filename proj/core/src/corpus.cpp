#include "cttstylo/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

std::string_view group_name(Group g) {
  switch (g) {
    case Group::HT: return "HT";
    case Group::NMT: return "NMT";
    case Group::LLM: return "LLM";
    case Group::Unlabeled: return "UNLABELED";
  }
  return "UNLABELED";
}

std::optional<Group> parse_group(std::string_view s) {
  std::string up(text::trim(s));
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "HT") return Group::HT;
  if (up == "NMT") return Group::NMT;
  if (up == "LLM") return Group::LLM;
  if (up == "UNLABELED" || up.empty()) return Group::Unlabeled;
  return std::nullopt;
}

std::size_t Document::token_count() const noexcept { return count_tokens(sentences); }

std::string Chunk::sample_id() const { return parent_doc + ":" + std::to_string(ordinal); }

std::size_t count_tokens(std::span<const Sentence> sentences) {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::vector<std::string> surfaces(std::span<const Sentence> sentences) {
  std::vector<std::string> out;
  out.reserve(count_tokens(sentences));
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) out.push_back(t.surface);
  }
  return out;
}

namespace {

struct SentenceIssue {
  std::size_t position;  // 0-based token position the issue is attributed to
  std::string rule;
};

std::vector<SentenceIssue> check_sentence(const Sentence& s) {
  std::vector<SentenceIssue> issues;
  const std::size_t n = s.size();
  if (n == 0) {
    issues.push_back({0, "empty sentence"});
    return issues;
  }
  bool heads_in_range = true;
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Token& t = s.tokens[i];
    if (t.index != static_cast<int>(i + 1)) issues.push_back({i, "index out of sequence"});
    if (t.head < 0 || t.head > static_cast<int>(n)) {
      issues.push_back({i, "head out of range"});
      heads_in_range = false;
    } else if (t.head == static_cast<int>(i + 1)) {
      issues.push_back({i, "self head"});
      heads_in_range = false;
    }
    if (t.head == 0) {
      ++roots;
      if (roots == 2) issues.push_back({i, "multiple roots"});
    }
  }
  if (roots == 0) issues.push_back({0, "no root"});
  if (heads_in_range) {
    // Follow governors from every token; a walk longer than n never meets the root.
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t cur = i + 1;
      std::size_t steps = 0;
      while (cur != 0 && steps <= n) {
        cur = static_cast<std::size_t>(s.tokens[cur - 1].head);
        ++steps;
      }
      if (cur != 0) {
        issues.push_back({i, "cyclic heads"});
        break;
      }
    }
  }
  return issues;
}

int parse_int_field(std::string_view field, const std::string& source, std::size_t line,
                    const char* what) {
  field = text::trim(field);
  int v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(source, line, std::string("non-integer ") + what + " '" + std::string(field) + "'");
  }
  return v;
}

class CorpusReader {
 public:
  CorpusReader(std::istream& in, std::string source, bool read_headers)
      : in_(in), source_(std::move(source)), read_headers_(read_headers) {}

  std::vector<Document> run(const DocumentMeta& preset) {
    meta_ = preset;
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      const std::string_view line = text::chomp(raw);
      if (text::trim(line).empty()) {
        on_blank();
      } else if (line.front() == '#') {
        on_comment(line);
      } else {
        on_token(line);
      }
    }
    finish_sentence();
    finish_document(true);
    if (docs_.empty()) throw ParseError(source_, std::max<std::size_t>(line_, 1), "zero sentences");
    return std::move(docs_);
  }

 private:
  void on_blank() {
    finish_sentence();
    ++blank_run_;
    if (blank_run_ >= 2 && !doc_.sentences.empty()) finish_document(false);
  }

  void on_comment(std::string_view line) {
    if (!read_headers_) return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) return;
    const std::string key(text::trim(line.substr(1, eq - 1)));
    const std::string value(text::trim(line.substr(eq + 1)));
    if (key == "id") {
      if (!pending_.tokens.empty() || !doc_.sentences.empty()) {
        finish_sentence();
        finish_document(false);
      }
      meta_ = DocumentMeta{};
      meta_.id = value;
      header_line_ = line_;
      has_header_ = true;
    } else if (key == "group") {
      const auto g = parse_group(value);
      if (!g) throw ParseError(source_, line_, "unknown group '" + value + "'");
      meta_.group = *g;
      has_header_ = true;
    } else if (key == "engine") {
      meta_.engine = value;
      has_header_ = true;
    }
  }

  void on_token(std::string_view line) {
    blank_run_ = 0;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 5) {
      throw ParseError(source_, line_,
                       "malformed line: expected 5 tab-separated columns, got " + std::to_string(cols.size()));
    }
    Token t;
    t.index = parse_int_field(cols[0], source_, line_, "index");
    t.surface = std::string(cols[1]);
    t.pos = std::string(text::trim(cols[2]));
    t.head = parse_int_field(cols[3], source_, line_, "head");
    t.deprel = std::string(text::trim(cols[4]));
    if (t.surface.empty()) throw ParseError(source_, line_, "empty surface");
    if (pending_.tokens.empty()) {
      if (doc_.sentences.empty() && !has_header_) header_line_ = line_;
    }
    pending_.tokens.push_back(std::move(t));
    pending_lines_.push_back(line_);
  }

  void finish_sentence() {
    if (pending_.tokens.empty()) return;
    const auto issues = check_sentence(pending_);
    if (!issues.empty()) {
      const auto& first = issues.front();
      throw ParseError(source_, pending_lines_[std::min(first.position, pending_lines_.size() - 1)], first.rule);
    }
    doc_.sentences.push_back(std::move(pending_));
    pending_ = Sentence{};
    pending_lines_.clear();
  }

  void finish_document(bool at_eof) {
    if (doc_.sentences.empty()) {
      if (has_header_ && (at_eof || read_headers_)) {
        throw ParseError(source_, std::max<std::size_t>(header_line_, 1), "zero sentences");
      }
      return;
    }
    doc_.id = meta_.id.empty() ? "doc" + std::to_string(docs_.size() + 1) : meta_.id;
    doc_.group = meta_.group;
    doc_.engine = meta_.engine;
    if (!ids_.insert(doc_.id).second) {
      throw ParseError(source_, header_line_, "duplicate document id '" + doc_.id + "'");
    }
    docs_.push_back(std::move(doc_));
    doc_ = Document{};
    if (read_headers_) meta_ = DocumentMeta{};
    has_header_ = false;
  }

  std::istream& in_;
  std::string source_;
  bool read_headers_;
  std::size_t line_ = 0;
  std::size_t header_line_ = 0;
  std::size_t blank_run_ = 0;
  bool has_header_ = false;
  DocumentMeta meta_;
  Document doc_;
  Sentence pending_;
  std::vector<std::size_t> pending_lines_;
  std::vector<Document> docs_;
  std::set<std::string> ids_;
};

}  // namespace

Document parse_annotated_text(std::istream& in, const DocumentMeta& meta, std::string_view source) {
  CorpusReader reader(in, std::string(source), false);
  auto docs = reader.run(meta);
  // Without header parsing a double blank line still splits the stream; the
  // caller asked for one document, so concatenate in order.
  Document out = std::move(docs.front());
  for (std::size_t i = 1; i < docs.size(); ++i) {
    for (auto& s : docs[i].sentences) out.sentences.push_back(std::move(s));
  }
  out.id = meta.id;
  out.group = meta.group;
  out.engine = meta.engine;
  return out;
}

std::vector<Document> parse_corpus(std::istream& in, std::string_view source) {
  CorpusReader reader(in, std::string(source), true);
  return reader.run(DocumentMeta{});
}

std::vector<Document> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  return parse_corpus(in, path);
}

void write_document(std::ostream& out, const Document& doc) {
  out << "# id = " << doc.id << '\n';
  if (doc.group != Group::Unlabeled) out << "# group = " << group_name(doc.group) << '\n';
  if (!doc.engine.empty()) out << "# engine = " << doc.engine << '\n';
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      out << t.index << '\t' << t.surface << '\t' << t.pos << '\t' << t.head << '\t' << t.deprel << '\n';
    }
    out << '\n';
  }
  out << '\n';
}

std::string serialize_document(const Document& doc) {
  std::ostringstream out;
  write_document(out, doc);
  return out.str();
}

std::vector<Chunk> chunk_document(const Document& doc, const ChunkParams& params) {
  if (params.min_tokens < 1 || params.target_tokens < params.min_tokens) {
    throw std::invalid_argument("chunk_document: require target_tokens >= min_tokens >= 1");
  }
  std::vector<Chunk> chunks;
  auto start_chunk = [&](std::size_t first) {
    Chunk c;
    c.parent_doc = doc.id;
    c.group = doc.group;
    c.engine = doc.engine;
    c.ordinal = chunks.size();
    c.first_sentence = first;
    return c;
  };

  Chunk cur = start_chunk(0);
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    cur.sentences.push_back(doc.sentences[i]);
    cur.token_count += doc.sentences[i].size();
    if (cur.token_count >= params.target_tokens) {
      chunks.push_back(std::move(cur));
      cur = start_chunk(i + 1);
    }
  }
  if (!cur.sentences.empty()) {
    if (cur.token_count < params.min_tokens && !chunks.empty()) {
      Chunk& prev = chunks.back();
      for (auto& s : cur.sentences) prev.sentences.push_back(std::move(s));
      prev.token_count += cur.token_count;
    } else {
      chunks.push_back(std::move(cur));
    }
  }
  for (auto& c : chunks) c.undersized = c.token_count < params.min_tokens;
  return chunks;
}

std::vector<std::string> sentence_violations(const Sentence& s) {
  std::vector<std::string> rules;
  for (auto& issue : check_sentence(s)) rules.push_back(std::move(issue.rule));
  return rules;
}

std::vector<Violation> validate_document(const Document& doc) {
  std::vector<Violation> out;
  if (doc.id.empty()) out.push_back({std::nullopt, "missing id"});
  if (doc.sentences.empty()) out.push_back({std::nullopt, "zero sentences"});
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    for (auto& rule : sentence_violations(doc.sentences[i])) out.push_back({i, std::move(rule)});
  }
  if (!doc.sentences.empty() && doc.token_count() == 0) out.push_back({std::nullopt, "zero tokens"});
  return out;
}

}  // namespace cttstylo
