#include "fca/implications.hpp"

#include <algorithm>
#include <sstream>

namespace fca {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

AttributeSet parse_side(std::string_view side, std::span<const std::string> names, std::size_t lineno) {
  AttributeSet out(names.size());
  side = trim(side);
  if (side.empty()) return out;
  std::size_t start = 0;
  while (start <= side.size()) {
    auto end = side.find(',', start);
    if (end == std::string_view::npos) end = side.size();
    std::string_view token = trim(side.substr(start, end - start));
    if (token.empty()) throw ParseError(lineno, "empty attribute name");
    std::string name(token);
    if (token.front() == '!' && token.size() > 1) name = std::string(kNegationPrefix) + std::string(trim(token.substr(1)));
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError(lineno, "unknown attribute '" + name + "'");
    out.insert(static_cast<std::size_t>(it - names.begin()));
    start = end + 1;
  }
  return out;
}

}  // namespace

Implication::Implication(AttributeSet premise, AttributeSet conclusion)
    : premise_(std::move(premise)), conclusion_(std::move(conclusion)) {
  if (premise_.width() != conclusion_.width()) throw DimensionError("premise and conclusion widths differ");
  conclusion_ -= premise_;
}

bool Implication::violated_by(const AttributeSet& attrs) const {
  return premise_.is_subset_of(attrs) && !conclusion_.is_subset_of(attrs);
}

bool ImplicationSet::add(Implication imp) {
  if (imp.width() != width_)
    throw DimensionError("implication of width " + std::to_string(imp.width()) + " added to set of width " +
                         std::to_string(width_));
  if (std::find(items_.begin(), items_.end(), imp) != items_.end()) return false;
  items_.push_back(std::move(imp));
  return true;
}

bool ImplicationSet::same_set_as(const ImplicationSet& other) const {
  if (width_ != other.width_ || size() != other.size()) return false;
  return std::all_of(items_.begin(), items_.end(), [&](const Implication& imp) {
    return std::find(other.items_.begin(), other.items_.end(), imp) != other.items_.end();
  });
}

bool holds(const FormalContext& ctx, const Implication& imp) { return !first_violator(ctx, imp).has_value(); }

std::optional<std::size_t> first_violator(const FormalContext& ctx, const Implication& imp) {
  if (imp.width() != ctx.num_attributes()) throw DimensionError("implication width does not match context");
  for (std::size_t g = 0; g < ctx.num_objects(); ++g)
    if (imp.violated_by(ctx.row(g))) return g;
  return std::nullopt;
}

AttributeSet lin_closure(const ImplicationSet& implications, const AttributeSet& attrs) {
  if (attrs.width() != implications.width()) throw DimensionError("attribute set width does not match implications");
  AttributeSet closed = attrs;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& imp : implications)
      if (imp.violated_by(closed)) {
        closed |= imp.conclusion();
        changed = true;
      }
  }
  return closed;
}

bool follows(const ImplicationSet& implications, const Implication& imp) {
  return imp.conclusion().is_subset_of(lin_closure(implications, imp.premise()));
}

ImplicationSet canonical_base(const FormalContext& ctx) {
  // Attribute exploration in which the context answers every question:
  // walk the sets closed under the base found so far, and each one that is
  // not an intent is pseudo-closed.
  ImplicationSet base(ctx.num_attributes());
  ImplicationClosure op(base);
  const AttributeSet all = ctx.all_attributes();
  std::optional<AttributeSet> current = AttributeSet(ctx.num_attributes());
  while (current && *current != all) {
    auto closed = ctx.close_attrs(*current);
    if (closed != *current) base.add(Implication(*current, std::move(closed)));
    current = next_closure(*current, op);
  }
  return base;
}

std::string format_attributes(const AttributeSet& attrs, std::span<const std::string> names) {
  std::string out;
  for (auto i : attrs.indices()) {
    if (!out.empty()) out += ", ";
    out += names[i];
  }
  return out;
}

std::string format_implication(const Implication& imp, std::span<const std::string> names, std::string_view arrow) {
  if (names.size() != imp.width()) throw DimensionError("name list does not match implication width");
  std::string out = format_attributes(imp.premise(), names);
  if (!out.empty()) out += ' ';
  out += arrow;
  const auto rhs = format_attributes(imp.conclusion(), names);
  if (!rhs.empty()) out += ' ' + rhs;
  return out;
}

ParsedImplications parse_implications(std::string_view text, std::span<const std::string> names) {
  ParsedImplications out{ImplicationSet(names.size()), false};
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (trim(line.substr(1)) == "dichotomized") out.dichotomized = true;
      continue;
    }
    std::size_t arrow = line.find("->");
    std::size_t arrow_len = 2;
    if (arrow == std::string_view::npos) {
      arrow = line.find("→");
      arrow_len = std::string_view("→").size();
    }
    if (arrow == std::string_view::npos) throw ParseError(lineno, "missing '->'");
    auto premise = parse_side(line.substr(0, arrow), names, lineno);
    auto conclusion = parse_side(line.substr(arrow + arrow_len), names, lineno);
    out.implications.add(Implication(std::move(premise), std::move(conclusion)));
  }
  return out;
}

bool uses_negated_tokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] == '!' && (i == 0 || t[i - 1] == ',' || t[i - 1] == ' ' || t[i - 1] == '>')) return true;
  }
  return false;
}

nlohmann::json implications_to_json(const ImplicationSet& implications) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& imp : implications)
    out.push_back({{"premise", imp.premise().indices()}, {"conclusion", imp.conclusion().indices()}});
  return out;
}

ImplicationSet implications_from_json(const nlohmann::json& j, std::size_t width) {
  try {
    ImplicationSet out(width);
    for (const auto& item : j)
      out.add(Implication(AttributeSet::from_indices(width, item.at("premise").get<std::vector<std::size_t>>()),
                          AttributeSet::from_indices(width, item.at("conclusion").get<std::vector<std::size_t>>())));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid implications JSON: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(0, std::string("invalid implications JSON: ") + e.what());
  }
}

}  // namespace fca
