#include "fca/context.hpp"

#include <unordered_set>
#include <utility>

namespace fca {
namespace {

std::string trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

void normalize_names(std::vector<std::string>& names, const char* kind) {
  std::unordered_set<std::string> seen;
  for (auto& n : names) {
    n = trim(n);
    if (n.empty()) throw NamingError(std::string("empty ") + kind + " name");
    if (!seen.insert(n).second) throw NamingError(std::string("duplicate ") + kind + " name '" + n + "'");
  }
}

std::optional<std::size_t> find_name(const std::vector<std::string>& names, std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

}  // namespace

FormalContext::FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                             std::vector<AttributeSet> rows)
    : objects_(std::move(objects)), attributes_(std::move(attributes)), rows_(std::move(rows)) {
  normalize_names(objects_, "object");
  normalize_names(attributes_, "attribute");
  if (rows_.size() != objects_.size())
    throw DimensionError("expected " + std::to_string(objects_.size()) + " rows, got " + std::to_string(rows_.size()));
  for (std::size_t g = 0; g < rows_.size(); ++g)
    if (rows_[g].width() != attributes_.size())
      throw DimensionError("row " + std::to_string(g) + " has width " + std::to_string(rows_[g].width()) +
                           ", expected " + std::to_string(attributes_.size()));
}

FormalContext FormalContext::empty(std::vector<std::string> attributes) {
  return FormalContext({}, std::move(attributes), {});
}

std::optional<std::size_t> FormalContext::find_attribute(std::string_view name) const {
  return find_name(attributes_, name);
}

std::optional<std::size_t> FormalContext::find_object(std::string_view name) const {
  return find_name(objects_, name);
}

std::size_t FormalContext::attribute_index(std::string_view name) const {
  if (auto i = find_attribute(name)) return *i;
  throw NotFoundError("unknown attribute '" + std::string(name) + "'");
}

AttributeSet FormalContext::attributes_from_names(std::span<const std::string> names) const {
  AttributeSet s = no_attributes();
  for (const auto& n : names) s.insert(attribute_index(trim(n)));
  return s;
}

std::vector<std::string> FormalContext::names_of(const AttributeSet& attrs) const {
  if (attrs.width() != num_attributes()) throw DimensionError("attribute set width mismatch");
  std::vector<std::string> out;
  for (auto i : attrs.indices()) out.push_back(attributes_[i]);
  return out;
}

std::vector<std::string> FormalContext::names_of(const ObjectSet& objs) const {
  if (objs.width() != num_objects()) throw DimensionError("object set width mismatch");
  std::vector<std::string> out;
  for (auto i : objs.indices()) out.push_back(objects_[i]);
  return out;
}

ObjectSet FormalContext::derive_attrs(const AttributeSet& attrs) const {
  if (attrs.width() != num_attributes())
    throw DimensionError("attribute set of width " + std::to_string(attrs.width()) + " for context with " +
                         std::to_string(num_attributes()) + " attributes");
  ObjectSet out = no_objects();
  for (std::size_t g = 0; g < rows_.size(); ++g)
    if (attrs.is_subset_of(rows_[g])) out.insert(g);
  return out;
}

AttributeSet FormalContext::derive_objects(const ObjectSet& objs) const {
  if (objs.width() != num_objects())
    throw DimensionError("object set of width " + std::to_string(objs.width()) + " for context with " +
                         std::to_string(num_objects()) + " objects");
  AttributeSet out = all_attributes();
  for (auto g : objs.indices()) out &= rows_[g];
  return out;
}

AttributeSet FormalContext::close_attrs(const AttributeSet& attrs) const { return derive_objects(derive_attrs(attrs)); }

ObjectSet FormalContext::close_objects(const ObjectSet& objs) const { return derive_attrs(derive_objects(objs)); }

FormalContext FormalContext::dichotomize() const {
  const std::size_t n = num_attributes();
  std::vector<std::string> names = attributes_;
  for (const auto& a : attributes_) {
    std::string neg = std::string(kNegationPrefix) + a;
    if (find_attribute(neg)) throw NamingError("cannot dichotomize: attribute '" + neg + "' already exists");
    names.push_back(std::move(neg));
  }
  std::vector<AttributeSet> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) {
    AttributeSet d(2 * n);
    for (std::size_t m = 0; m < n; ++m) d.insert(r.contains(m) ? m : n + m);
    rows.push_back(std::move(d));
  }
  return FormalContext(objects_, std::move(names), std::move(rows));
}

FormalContext FormalContext::extend_with_attribute(const std::string& name) const {
  std::vector<std::string> names = attributes_;
  names.push_back(name);
  const std::size_t n = num_attributes();
  std::vector<AttributeSet> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) {
    AttributeSet e(n + 1);
    for (auto m : r.indices()) e.insert(m);
    rows.push_back(std::move(e));
  }
  return FormalContext(objects_, std::move(names), std::move(rows));
}

FormalContext FormalContext::with_object(const std::string& name, const AttributeSet& attrs) const {
  auto objects = objects_;
  objects.push_back(name);
  auto rows = rows_;
  rows.push_back(attrs);
  return FormalContext(std::move(objects), attributes_, std::move(rows));
}

FormalContext FormalContext::restrict_objects(const ObjectSet& objs) const {
  if (objs.width() != num_objects()) throw DimensionError("object set width mismatch");
  std::vector<std::string> objects;
  std::vector<AttributeSet> rows;
  for (auto g : objs.indices()) {
    objects.push_back(objects_[g]);
    rows.push_back(rows_[g]);
  }
  return FormalContext(std::move(objects), attributes_, std::move(rows));
}

FormalContext FormalContext::remove_attribute(std::size_t attribute) const {
  if (attribute >= num_attributes()) throw DimensionError("attribute index out of range");
  std::vector<std::string> names;
  for (std::size_t m = 0; m < attributes_.size(); ++m)
    if (m != attribute) names.push_back(attributes_[m]);
  std::vector<AttributeSet> rows;
  for (const auto& r : rows_) {
    AttributeSet s(names.size());
    for (auto m : r.indices())
      if (m != attribute) s.insert(m < attribute ? m : m - 1);
    rows.push_back(std::move(s));
  }
  return FormalContext(objects_, std::move(names), std::move(rows));
}

}  // namespace fca
