#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ldforge {

/// Index of a free generator. Generator 0 prints as "x", 1 as "y", others as "g<i>".
struct GeneratorId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(GeneratorId, GeneratorId) = default;
};

enum class NodeKind : std::uint8_t { Generator, Apply, Compose };

/// Immutable binary term over generators with application and composition nodes.
///
/// Subterms are shared between copies; equality is structural. A term without
/// Compose nodes is an A-term (element of the free LD algebra), otherwise it is
/// a P-term of the extended algebra.
class Term {
 public:
  static Term generator(GeneratorId g);
  static Term generator(std::uint32_t index) { return generator(GeneratorId{index}); }
  static Term apply(const Term& left, const Term& right);
  static Term compose(const Term& left, const Term& right);

  NodeKind kind() const noexcept { return node_->kind; }
  bool is_generator() const noexcept { return kind() == NodeKind::Generator; }
  bool is_apply() const noexcept { return kind() == NodeKind::Apply; }
  bool is_compose() const noexcept { return kind() == NodeKind::Compose; }

  /// Precondition: is_generator().
  GeneratorId generator_id() const;
  /// Precondition: !is_generator().
  Term left() const;
  Term right() const;

  /// Leaf count.
  std::size_t size() const noexcept { return node_->size; }
  std::size_t hash() const noexcept { return node_->hash; }
  bool is_a_term() const noexcept { return !node_->has_compose; }
  /// One more than the largest generator index occurring in the term.
  std::uint32_t arity() const noexcept { return node_->arity; }

  friend bool operator==(const Term& a, const Term& b) noexcept;

 private:
  struct Node {
    NodeKind kind;
    GeneratorId gen;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::size_t size;
    std::size_t hash;
    std::uint32_t arity;
    bool has_compose;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term binary(NodeKind kind, const Term& left, const Term& right);
  static bool equal(const Node* a, const Node* b) noexcept;

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

// Convenience builders used heavily in tests and examples.
inline Term gen(std::uint32_t index) { return Term::generator(index); }
inline Term operator*(const Term& a, const Term& b) { return Term::apply(a, b); }

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the term grammar
///
///     term := atom | term atom          (application, left-assoc)
///     atom := gen | '(' term ')' | '(' term 'o' term ')'
///     gen  := 'x' | 'y' | 'g' digits
///
/// plus a single unparenthesized composition "term o term" at top level.
/// Throws ParseError on malformed input or on a generator index >= arity.
Term parse_term(std::string_view text, std::uint32_t arity = 2);

/// Inverse of parse_term with minimal parentheses.
std::string render_term(const Term& t);

std::string generator_name(GeneratorId g);

/// Decomposition t = head f_1 f_2 ... f_k along the left spine.
struct Spine {
  Term head;
  std::vector<Term> factors;
};

Spine left_spine(const Term& t);

/// head f_1 ... f_count.
Term refold(const Term& head, std::span<const Term> factors);

GeneratorId leftmost_generator(const Term& t);

/// All terms over `arity` generators with exactly `size` leaves and no Compose nodes.
std::vector<Term> enumerate_a_terms(std::size_t size, std::uint32_t arity);

}  // namespace ldforge

template <>
struct std::hash<ldforge::Term> {
  std::size_t operator()(const ldforge::Term& t) const noexcept { return t.hash(); }
};
