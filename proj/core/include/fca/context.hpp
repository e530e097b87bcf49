#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fca/index_set.hpp"

namespace fca {

/// A formal context (G, M, I): named objects, named attributes and the
/// incidence relation stored as one attribute row per object.
///
/// Values are immutable once built. Operations that change the shape of a
/// context return a new context.
class FormalContext {
 public:
  FormalContext() = default;

  /// Throws NamingError on empty or duplicate names and DimensionError when a
  /// row width differs from the attribute count.
  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                std::vector<AttributeSet> rows);

  /// Context with the given attributes and no objects.
  static FormalContext empty(std::vector<std::string> attributes);

  std::size_t num_objects() const noexcept { return objects_.size(); }
  std::size_t num_attributes() const noexcept { return attributes_.size(); }

  const std::vector<std::string>& object_names() const noexcept { return objects_; }
  const std::vector<std::string>& attribute_names() const noexcept { return attributes_; }
  const std::vector<AttributeSet>& rows() const noexcept { return rows_; }
  const AttributeSet& row(std::size_t object) const { return rows_.at(object); }

  bool incident(std::size_t object, std::size_t attribute) const { return rows_.at(object).contains(attribute); }

  std::optional<std::size_t> find_attribute(std::string_view name) const;
  std::optional<std::size_t> find_object(std::string_view name) const;
  /// Throws NotFoundError for unknown names.
  std::size_t attribute_index(std::string_view name) const;

  AttributeSet attributes_from_names(std::span<const std::string> names) const;
  std::vector<std::string> names_of(const AttributeSet& attrs) const;
  std::vector<std::string> names_of(const ObjectSet& objs) const;

  AttributeSet no_attributes() const { return AttributeSet(num_attributes()); }
  AttributeSet all_attributes() const { return AttributeSet::full(num_attributes()); }
  ObjectSet no_objects() const { return ObjectSet(num_objects()); }
  ObjectSet all_objects() const { return ObjectSet::full(num_objects()); }

  /// B' : objects having every attribute of B.
  ObjectSet derive_attrs(const AttributeSet& attrs) const;
  /// A' : attributes shared by every object of A.
  AttributeSet derive_objects(const ObjectSet& objs) const;
  /// B''
  AttributeSet close_attrs(const AttributeSet& attrs) const;
  /// A''
  ObjectSet close_objects(const ObjectSet& objs) const;

  /// Adds complemented attributes "not_<m>" after the originals.
  FormalContext dichotomize() const;
  /// Appends an attribute no object has.
  FormalContext extend_with_attribute(const std::string& name) const;
  FormalContext with_object(const std::string& name, const AttributeSet& attrs) const;
  /// Subcontext induced by the given objects, keeping their relative order.
  FormalContext restrict_objects(const ObjectSet& objs) const;
  FormalContext remove_attribute(std::size_t attribute) const;

  friend bool operator==(const FormalContext&, const FormalContext&) = default;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<AttributeSet> rows_;
};

/// Prefix used for complemented attributes produced by dichotomize().
inline constexpr std::string_view kNegationPrefix = "not_";

}  // namespace fca
