#include <cctype>

#include "cttstylo/cluster.hpp"
#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

namespace {

bool needs_quotes(std::string_view id) {
  if (id.empty()) return true;
  for (unsigned char c : id) {
    if (std::isspace(c) || c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '\'' || c == '[' ||
        c == ']') {
      return true;
    }
  }
  return false;
}

void write_label(std::string& out, std::string_view id) {
  if (!needs_quotes(id)) {
    out += id;
    return;
  }
  out.push_back('\'');
  for (char c : id) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
}

void write_node(std::string& out, const DendrogramNode& n) {
  if (n.leaf()) {
    write_label(out, n.id);
    return;
  }
  out.push_back('(');
  write_node(out, *n.left);
  out.push_back(':');
  out += text::format_double(n.height - n.left->height);
  out.push_back(',');
  write_node(out, *n.right);
  out.push_back(':');
  out += text::format_double(n.height - n.right->height);
  out.push_back(')');
}

class NewickParser {
 public:
  explicit NewickParser(std::string_view s) : s_(s) {}

  std::unique_ptr<DendrogramNode> parse() {
    auto root = node();
    skip_ws();
    expect(';');
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("newick: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string label() {
    skip_ws();
    std::string out;
    if (pos_ < s_.size() && s_[pos_] == '\'') {
      ++pos_;
      for (;;) {
        if (pos_ >= s_.size()) fail("unterminated quoted label");
        if (s_[pos_] == '\'') {
          if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
            out.push_back('\'');
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        out.push_back(s_[pos_++]);
      }
      return out;
    }
    while (pos_ < s_.size() && !needs_quotes(s_.substr(pos_, 1))) out.push_back(s_[pos_++]);
    return out;
  }

  double length() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ':') return 0.0;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == 'e' || s_[pos_] == 'E' || s_[pos_] == '-' || s_[pos_] == '+')) {
      ++pos_;
    }
    try {
      std::size_t used = 0;
      const std::string num(s_.substr(start, pos_ - start));
      const double v = std::stod(num, &used);
      if (used != num.size()) fail("bad branch length");
      return v;
    } catch (const std::logic_error&) {
      fail("bad branch length");
    }
  }

  std::unique_ptr<DendrogramNode> node() {
    skip_ws();
    auto n = std::make_unique<DendrogramNode>();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      n->left = node();
      const double ll = length();
      skip_ws();
      expect(',');
      n->right = node();
      const double rl = length();
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') fail("only binary trees are supported");
      expect(')');
      label();  // internal labels are ignored
      n->height = std::max(n->left->height + ll, n->right->height + rl);
      return n;
    }
    n->id = label();
    if (n->id.empty()) fail("empty leaf label");
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string write_newick(const DendrogramNode& root) {
  std::string out;
  write_node(out, root);
  out.push_back(';');
  return out;
}

std::unique_ptr<DendrogramNode> parse_newick(std::string_view text) { return NewickParser(text).parse(); }

}  // namespace cttstylo
