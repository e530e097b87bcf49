#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fca/context.hpp"

namespace fca {

/// A closure operator on the attribute sets of a fixed-width universe.
/// Implementations must be idempotent, extensive and monotone.
class ClosureOperator {
 public:
  virtual ~ClosureOperator() = default;
  virtual std::size_t width() const = 0;
  virtual AttributeSet close(const AttributeSet& attrs) const = 0;
};

/// B -> B'' in a context.
class ContextClosure final : public ClosureOperator {
 public:
  explicit ContextClosure(const FormalContext& ctx) : ctx_(&ctx) {}
  std::size_t width() const override { return ctx_->num_attributes(); }
  AttributeSet close(const AttributeSet& attrs) const override { return ctx_->close_attrs(attrs); }

 private:
  const FormalContext* ctx_;
};

/// A < B in lectic order: the sets differ and the smallest index where they
/// differ belongs to B.
bool lectic_less(const AttributeSet& a, const AttributeSet& b);

/// The lectically smallest closed set strictly greater than `current`, or
/// nullopt once `current` is the full universe. `current` must be closed.
std::optional<AttributeSet> next_closure(const AttributeSet& current, const ClosureOperator& op);

/// Streams the closed sets of an operator in lectic order, starting at the
/// closure of the empty set. Single consumer; the operator must outlive it.
class LecticCursor {
 public:
  explicit LecticCursor(const ClosureOperator& op) : op_(&op) {}

  /// Next closed set, or nullopt when the enumeration is exhausted.
  std::optional<AttributeSet> next();

  /// Last emitted set; nullopt before the first call to next().
  const std::optional<AttributeSet>& current() const noexcept { return current_; }

 private:
  const ClosureOperator* op_;
  std::optional<AttributeSet> current_;
  bool started_ = false;
  bool finished_ = false;
};

struct FormalConcept {
  ObjectSet extent;
  AttributeSet intent;

  friend bool operator==(const FormalConcept&, const FormalConcept&) = default;
};

/// Every concept of the context, in lectic order of intents.
std::vector<FormalConcept> enumerate_concepts(const FormalContext& ctx);

}  // namespace fca
