#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fca/closure.hpp"

namespace fca {

/// A set of concepts with its cover relation (the edges of a line diagram).
///
/// Concepts are kept in lectic intent order. A cover (child, parent) means the
/// child's extent is a proper subset of the parent's with no concept strictly
/// between them. Built lattices are immutable.
class ConceptLattice {
 public:
  using Cover = std::pair<std::size_t, std::size_t>;

  ConceptLattice() = default;
  /// Computes covers among the given concepts by extent inclusion.
  explicit ConceptLattice(std::vector<FormalConcept> concepts);
  /// Takes covers as given; used when reading serialized lattices.
  ConceptLattice(std::vector<FormalConcept> concepts, std::vector<Cover> covers);

  std::size_t size() const noexcept { return concepts_.size(); }
  const std::vector<FormalConcept>& concepts() const noexcept { return concepts_; }
  const FormalConcept& concept_at(std::size_t i) const { return concepts_.at(i); }
  /// Sorted by (child, parent).
  const std::vector<Cover>& covers() const noexcept { return covers_; }

  std::optional<std::size_t> find(const AttributeSet& intent) const;
  /// Node of maximal extent; throws NotFoundError on an empty lattice.
  std::size_t top() const;
  /// Node of minimal extent; throws NotFoundError on an empty lattice.
  std::size_t bottom() const;

  std::vector<std::size_t> upper_covers(std::size_t node) const;
  std::vector<std::size_t> lower_covers(std::size_t node) const;

  friend bool operator==(const ConceptLattice&, const ConceptLattice&) = default;

 private:
  std::vector<FormalConcept> concepts_;
  std::vector<Cover> covers_;
};

ConceptLattice build_lattice(const FormalContext& ctx);

/// (tags', tags''): the most specific concept whose intent contains `tags`.
FormalConcept concept_for(const FormalContext& ctx, const AttributeSet& tags);

struct Neighbors {
  std::vector<FormalConcept> upper;  ///< more general
  std::vector<FormalConcept> lower;  ///< more specific
};

/// Cover neighbours of a node; throws NotFoundError if `c` is not in `lat`.
Neighbors neighbors(const ConceptLattice& lat, const FormalConcept& c);

/// Concepts at most `depth` cover steps below the top, with induced covers.
ConceptLattice top_part(const FormalContext& ctx, std::size_t depth);
ConceptLattice top_part(const ConceptLattice& lat, std::size_t depth);

/// Graphviz digraph with edges from child to parent and reduced labelling.
std::string export_dot(const ConceptLattice& lat, const FormalContext& ctx);

/// {"concepts":[{"extent":[...],"intent":[...]}], "covers":[[child,parent]]}
nlohmann::json lattice_to_json(const ConceptLattice& lat);
ConceptLattice lattice_from_json(const nlohmann::json& j, std::size_t num_objects, std::size_t num_attributes);

}  // namespace fca
