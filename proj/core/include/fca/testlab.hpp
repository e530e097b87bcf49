#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fca/implications.hpp"
#include "fca/lattice.hpp"

namespace fca {

struct FailureCluster {
  AttributeSet shared_attrs;  ///< over the failed context's attributes
  std::vector<std::string> tests;
};

/// Groups of failed tests by the attributes they share.
struct FailureReport {
  std::string failure_attribute;
  /// Objects carrying the failure attribute, with that column removed.
  FormalContext failed_context;
  /// Most general first: extent size descending, then lectic intent order.
  std::vector<FailureCluster> clusters;
};

/// Throws NotFoundError if `failure_attr` is not an attribute of `ctx`.
FailureReport failure_report(const FormalContext& ctx, const std::string& failure_attr, std::size_t depth);

std::string report_to_text(const FailureReport& report);
/// {"failureAttr":..., "clusters":[{"attrs":[names],"tests":[names]}]}
nlohmann::json report_to_json(const FailureReport& report);

struct NamedConcept {
  std::vector<std::string> extent;
  std::vector<std::string> intent;
};

struct FeatureNeighborhood {
  NamedConcept focus;
  std::vector<NamedConcept> upper;  ///< more general feature groups
  std::vector<NamedConcept> lower;  ///< more specific feature groups
};

/// The concept generated by `tags` and its cover neighbours. Throws
/// NotFoundError on an unknown tag.
FeatureNeighborhood feature_neighbors(const FormalContext& ctx, const std::vector<std::string>& tags);

std::string neighborhood_to_text(const FeatureNeighborhood& n);
nlohmann::json neighborhood_to_json(const FeatureNeighborhood& n);

/// Constraint lines for a pairwise-testing model.
struct PictModel {
  std::vector<std::string> lines;
};

/// One "IF [a] = 1 AND ... THEN [b] = 1 AND ...;" line per implication, in
/// order. In a dichotomized universe "not_x" renders as "[x] = 0". An empty
/// premise yields an unconditional constraint; an empty conclusion yields no
/// line. Throws NamingError for names containing ']'.
PictModel export_pict(const ImplicationSet& base, const std::vector<std::string>& attrs);

}  // namespace fca
