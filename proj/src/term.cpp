#include "ldforge/term.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

namespace ldforge {

namespace {

constexpr std::size_t kGeneratorSeed = 0x9e3779b97f4a7c15ULL;

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Term Term::generator(GeneratorId g) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Generator;
  node->gen = g;
  node->size = 1;
  node->hash = mix(kGeneratorSeed, g.index);
  node->arity = g.index + 1;
  node->has_compose = false;
  return Term(std::move(node));
}

Term Term::binary(NodeKind kind, const Term& left, const Term& right) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->left = left.node_;
  node->right = right.node_;
  node->size = left.size() + right.size();
  node->hash = mix(mix(static_cast<std::size_t>(kind) * 0x100000001b3ULL, left.hash()),
                   right.hash());
  node->arity = std::max(left.arity(), right.arity());
  node->has_compose = kind == NodeKind::Compose || left.node_->has_compose ||
                      right.node_->has_compose;
  return Term(std::move(node));
}

Term Term::apply(const Term& left, const Term& right) {
  return binary(NodeKind::Apply, left, right);
}

Term Term::compose(const Term& left, const Term& right) {
  return binary(NodeKind::Compose, left, right);
}

GeneratorId Term::generator_id() const {
  if (!is_generator()) throw std::logic_error("generator_id on a non-leaf term");
  return node_->gen;
}

Term Term::left() const {
  if (is_generator()) throw std::logic_error("left() on a generator");
  return Term(node_->left);
}

Term Term::right() const {
  if (is_generator()) throw std::logic_error("right() on a generator");
  return Term(node_->right);
}

bool Term::equal(const Node* a, const Node* b) noexcept {
  while (true) {
    if (a == b) return true;
    if (a->hash != b->hash || a->size != b->size || a->kind != b->kind) return false;
    if (a->kind == NodeKind::Generator) return a->gen == b->gen;
    if (!equal(a->left.get(), b->left.get())) return false;
    a = a->right.get();
    b = b->right.get();
  }
}

bool operator==(const Term& a, const Term& b) noexcept {
  return Term::equal(a.node_.get(), b.node_.get());
}

std::string generator_name(GeneratorId g) {
  if (g.index == 0) return "x";
  if (g.index == 1) return "y";
  return "g" + std::to_string(g.index);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::uint32_t arity) : text_(text), arity_(arity) {}

  Term parse() {
    Term t = parse_term();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == 'o') {
      ++pos_;
      t = Term::compose(t, parse_term());
      skip_space();
    }
    if (pos_ != text_.size()) fail("unexpected character");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == 'x' || c == 'y' || c == 'g';
  }

  Term parse_term() {
    if (!at_atom_start()) fail("expected a term");
    Term t = parse_atom();
    while (at_atom_start()) t = Term::apply(t, parse_atom());
    return t;
  }

  Term parse_atom() {
    skip_space();
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term inner = parse_term();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == 'o') {
        ++pos_;
        Term rhs = parse_term();
        inner = Term::compose(inner, rhs);
        skip_space();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    return parse_generator();
  }

  Term parse_generator() {
    const std::size_t start = pos_;
    const char c = text_[pos_++];
    std::uint32_t index = 0;
    if (c == 'x') {
      index = 0;
    } else if (c == 'y') {
      index = 1;
    } else {
      const char* first = text_.data() + pos_;
      const char* last = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(first, last, index);
      if (ec != std::errc{} || ptr == first) {
        pos_ = start + 1;
        fail("expected digits after 'g'");
      }
      pos_ += static_cast<std::size_t>(ptr - first);
    }
    if (index >= arity_) {
      throw ParseError("generator " + generator_name(GeneratorId{index}) +
                           " out of range for arity " + std::to_string(arity_),
                       start);
    }
    return Term::generator(index);
  }

  std::string_view text_;
  std::uint32_t arity_;
  std::size_t pos_ = 0;
};

void render_into(const Term& t, std::string& out, bool as_right_operand);

void render_compose_body(const Term& t, std::string& out) {
  render_into(t.left(), out, false);
  out += " o ";
  render_into(t.right(), out, false);
}

void render_into(const Term& t, std::string& out, bool as_right_operand) {
  switch (t.kind()) {
    case NodeKind::Generator:
      out += generator_name(t.generator_id());
      return;
    case NodeKind::Compose:
      out += '(';
      render_compose_body(t, out);
      out += ')';
      return;
    case NodeKind::Apply:
      if (as_right_operand) out += '(';
      render_into(t.left(), out, false);
      out += ' ';
      render_into(t.right(), out, true);
      if (as_right_operand) out += ')';
      return;
  }
}

void enumerate_into(std::size_t size, std::uint32_t arity,
                    std::vector<std::vector<Term>>& memo) {
  if (!memo[size].empty()) return;
  std::vector<Term>& out = memo[size];
  if (size == 1) {
    for (std::uint32_t g = 0; g < arity; ++g) out.push_back(Term::generator(g));
    return;
  }
  for (std::size_t left = 1; left < size; ++left) {
    enumerate_into(left, arity, memo);
    enumerate_into(size - left, arity, memo);
    for (const Term& l : memo[left])
      for (const Term& r : memo[size - left]) out.push_back(Term::apply(l, r));
  }
}

}  // namespace

Term parse_term(std::string_view text, std::uint32_t arity) {
  return Parser(text, arity).parse();
}

std::string render_term(const Term& t) {
  std::string out;
  // A top-level composition is written without its enclosing parentheses.
  if (t.is_compose())
    render_compose_body(t, out);
  else
    render_into(t, out, false);
  return out;
}

Spine left_spine(const Term& t) {
  std::vector<Term> factors;
  Term cur = t;
  while (cur.is_apply()) {
    factors.push_back(cur.right());
    cur = cur.left();
  }
  std::reverse(factors.begin(), factors.end());
  return Spine{cur, std::move(factors)};
}

Term refold(const Term& head, std::span<const Term> factors) {
  Term t = head;
  for (const Term& f : factors) t = Term::apply(t, f);
  return t;
}

GeneratorId leftmost_generator(const Term& t) {
  Term cur = t;
  while (!cur.is_generator()) cur = cur.left();
  return cur.generator_id();
}

std::vector<Term> enumerate_a_terms(std::size_t size, std::uint32_t arity) {
  if (size == 0 || arity == 0) return {};
  std::vector<std::vector<Term>> memo(size + 1);
  enumerate_into(size, arity, memo);
  return memo[size];
}

}  // namespace ldforge
