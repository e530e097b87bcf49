#include "fca/closure.hpp"

namespace fca {

bool lectic_less(const AttributeSet& a, const AttributeSet& b) {
  const auto diff = a.first_difference(b);
  return diff && b.contains(*diff);
}

std::optional<AttributeSet> next_closure(const AttributeSet& current, const ClosureOperator& op) {
  const std::size_t n = op.width();
  if (current.width() != n)
    throw DimensionError("set of width " + std::to_string(current.width()) + " for operator of width " +
                         std::to_string(n));
  AttributeSet prefix = current;
  for (std::size_t i = n; i-- > 0;) {
    if (prefix.contains(i)) {
      prefix.erase(i);
      continue;
    }
    AttributeSet candidate = prefix;
    candidate.insert(i);
    candidate = op.close(candidate);
    // Canonicity: the closure may not add anything below i.
    if (!(candidate - prefix).has_member_below(i)) return candidate;
  }
  return std::nullopt;
}

std::optional<AttributeSet> LecticCursor::next() {
  if (finished_) return std::nullopt;
  if (!started_) {
    started_ = true;
    current_ = op_->close(AttributeSet(op_->width()));
    return current_;
  }
  auto n = next_closure(*current_, *op_);
  if (!n) {
    finished_ = true;
    return std::nullopt;
  }
  current_ = std::move(n);
  return current_;
}

std::vector<FormalConcept> enumerate_concepts(const FormalContext& ctx) {
  ContextClosure op(ctx);
  LecticCursor cursor(op);
  std::vector<FormalConcept> out;
  while (auto intent = cursor.next()) out.push_back({ctx.derive_attrs(*intent), *intent});
  return out;
}

}  // namespace fca
