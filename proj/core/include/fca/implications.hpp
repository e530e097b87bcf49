#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fca/closure.hpp"

namespace fca {

/// premise -> conclusion over one attribute universe. The conclusion is
/// stored without the premise's attributes, so equal implications compare
/// equal regardless of how their conclusions were written.
class Implication {
 public:
  Implication(AttributeSet premise, AttributeSet conclusion);

  const AttributeSet& premise() const noexcept { return premise_; }
  const AttributeSet& conclusion() const noexcept { return conclusion_; }
  std::size_t width() const noexcept { return premise_.width(); }

  /// True iff `attrs` contains the premise but not the whole conclusion.
  bool violated_by(const AttributeSet& attrs) const;

  friend bool operator==(const Implication&, const Implication&) = default;

 private:
  AttributeSet premise_;
  AttributeSet conclusion_;
};

/// Ordered list of implications without duplicates.
class ImplicationSet {
 public:
  explicit ImplicationSet(std::size_t width = 0) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Implication& operator[](std::size_t i) const { return items_.at(i); }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  /// Appends unless an equal implication is present; returns whether added.
  bool add(Implication imp);

  /// Order-insensitive comparison.
  bool same_set_as(const ImplicationSet& other) const;

  friend bool operator==(const ImplicationSet&, const ImplicationSet&) = default;

 private:
  std::size_t width_;
  std::vector<Implication> items_;
};

/// premise' is contained in conclusion'.
bool holds(const FormalContext& ctx, const Implication& imp);
/// Lowest-index object that violates the implication, if any.
std::optional<std::size_t> first_violator(const FormalContext& ctx, const Implication& imp);

/// Smallest superset of `attrs` closed under every implication of `implications`.
AttributeSet lin_closure(const ImplicationSet& implications, const AttributeSet& attrs);

/// Armstrong derivability: conclusion is inside lin_closure(premise).
bool follows(const ImplicationSet& implications, const Implication& imp);

class ImplicationClosure final : public ClosureOperator {
 public:
  explicit ImplicationClosure(const ImplicationSet& implications) : implications_(&implications) {}
  std::size_t width() const override { return implications_->width(); }
  AttributeSet close(const AttributeSet& attrs) const override { return lin_closure(*implications_, attrs); }

 private:
  const ImplicationSet* implications_;
};

/// Duquenne-Guigues base: one implication P -> P'' per pseudo-intent P, in
/// lectic order of premises.
ImplicationSet canonical_base(const FormalContext& ctx);

/// Comma-joined attribute names in index order.
std::string format_attributes(const AttributeSet& attrs, std::span<const std::string> names);

/// "a, b → c". An empty premise renders as "→ c".
std::string format_implication(const Implication& imp, std::span<const std::string> names,
                               std::string_view arrow = "→");

struct ParsedImplications {
  ImplicationSet implications;
  /// The text carried a "#dichotomized" header line.
  bool dichotomized = false;
};

/// Parses lines of the form "a, b -> c, d" ("→" also accepted) against an
/// attribute universe. "!x" names attribute "not_x". Blank lines and lines
/// starting with '#' are skipped; unknown names raise ParseError.
ParsedImplications parse_implications(std::string_view text, std::span<const std::string> names);

/// True if any "!x" token appears outside comments.
bool uses_negated_tokens(std::string_view text);

/// [{"premise":[indices],"conclusion":[indices]}, ...]
nlohmann::json implications_to_json(const ImplicationSet& implications);
ImplicationSet implications_from_json(const nlohmann::json& j, std::size_t width);

}  // namespace fca
