#pragma once

// Annotated token/sentence model, the tab-separated reader and writer, and
// the splitting of documents into fixed-size learning samples.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cttstylo {

enum class Group { HT, NMT, LLM, Unlabeled };

std::string_view group_name(Group g);
// Accepts "HT", "NMT", "LLM", "UNLABELED" (case-insensitive); nullopt otherwise.
std::optional<Group> parse_group(std::string_view s);

struct Token {
  int index = 0;  // 1-based position in the sentence
  std::string surface;
  std::string pos;
  int head = 0;   // 0 = root
  std::string deprel;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct DocumentMeta {
  std::string id;
  Group group = Group::Unlabeled;
  std::string engine;
};

struct Document {
  std::string id;
  Group group = Group::Unlabeled;
  std::string engine;
  std::vector<Sentence> sentences;

  std::size_t token_count() const noexcept;
  friend bool operator==(const Document&, const Document&) = default;
};

// A contiguous run of whole sentences from one document.
struct Chunk {
  std::string parent_doc;
  Group group = Group::Unlabeled;
  std::string engine;
  std::size_t ordinal = 0;
  std::size_t first_sentence = 0;  // offset into the parent document
  std::vector<Sentence> sentences;
  std::size_t token_count = 0;
  bool undersized = false;

  // "<doc>:<ordinal>"
  std::string sample_id() const;
};

// Parses a single document body. '#' lines are ignored; `meta` supplies the
// identity. Errors carry the offending line number.
Document parse_annotated_text(std::istream& in, const DocumentMeta& meta,
                              std::string_view source = "<input>");

// Parses a stream that may hold several documents separated by two blank
// lines, reading `# id = ...`, `# group = ...` and `# engine = ...` headers.
// A new `# id` header also starts a new document.
std::vector<Document> parse_corpus(std::istream& in, std::string_view source = "<input>");
std::vector<Document> load_corpus_file(const std::string& path);

// Inverse of parse_corpus for one document.
void write_document(std::ostream& out, const Document& doc);
std::string serialize_document(const Document& doc);

struct ChunkParams {
  std::size_t target_tokens = 2000;
  std::size_t min_tokens = 1000;
};

std::vector<Chunk> chunk_document(const Document& doc, const ChunkParams& params);

struct Violation {
  std::optional<std::size_t> sentence;  // 0-based; empty for document-level rules
  std::string rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_document(const Document& doc);

// Rule names violated by one sentence, in a fixed order.
std::vector<std::string> sentence_violations(const Sentence& s);

// All token surfaces of a span of sentences, in order.
std::vector<std::string> surfaces(std::span<const Sentence> sentences);
std::size_t count_tokens(std::span<const Sentence> sentences);

}  // namespace cttstylo
