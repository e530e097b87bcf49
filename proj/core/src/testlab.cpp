#include "fca/testlab.hpp"

#include <algorithm>
#include <sstream>

namespace fca {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

NamedConcept named(const FormalContext& ctx, const FormalConcept& c) {
  return {ctx.names_of(c.extent), ctx.names_of(c.intent)};
}

nlohmann::json concept_json(const NamedConcept& c) { return {{"extent", c.extent}, {"intent", c.intent}}; }

// "[x] = 0" for a complemented attribute whose base name is also present.
std::string pict_term(const std::string& name, const std::vector<std::string>& attrs) {
  if (name.find(']') != std::string::npos) throw NamingError("attribute name '" + name + "' contains ']'");
  if (name.starts_with(kNegationPrefix)) {
    const std::string base = name.substr(kNegationPrefix.size());
    if (std::find(attrs.begin(), attrs.end(), base) != attrs.end()) return "[" + base + "] = 0";
  }
  return "[" + name + "] = 1";
}

std::string pict_conjunction(const AttributeSet& set, const std::vector<std::string>& attrs) {
  std::string out;
  for (auto i : set.indices()) {
    if (!out.empty()) out += " AND ";
    out += pict_term(attrs[i], attrs);
  }
  return out;
}

}  // namespace

FailureReport failure_report(const FormalContext& ctx, const std::string& failure_attr, std::size_t depth) {
  const std::size_t attr = ctx.attribute_index(failure_attr);
  AttributeSet selector = ctx.no_attributes();
  selector.insert(attr);
  FormalContext failed = ctx.restrict_objects(ctx.derive_attrs(selector)).remove_attribute(attr);

  FailureReport report{failure_attr, failed, {}};
  const ConceptLattice part = top_part(failed, depth);
  std::vector<FormalConcept> concepts;
  for (const auto& c : part.concepts())
    if (!c.extent.empty()) concepts.push_back(c);
  // Concepts arrive in lectic order; a stable sort keeps it among equal sizes.
  std::stable_sort(concepts.begin(), concepts.end(), [](const FormalConcept& a, const FormalConcept& b) {
    return a.extent.size() > b.extent.size();
  });
  for (const auto& c : concepts) report.clusters.push_back({c.intent, failed.names_of(c.extent)});
  return report;
}

std::string report_to_text(const FailureReport& report) {
  std::ostringstream out;
  out << "failure attribute: " << report.failure_attribute << '\n';
  out << "failed tests: " << join(report.failed_context.object_names()) << '\n';
  for (const auto& c : report.clusters)
    out << "cluster {" << join(report.failed_context.names_of(c.shared_attrs)) << "}: tests " << join(c.tests) << '\n';
  return out.str();
}

nlohmann::json report_to_json(const FailureReport& report) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& c : report.clusters)
    clusters.push_back({{"attrs", report.failed_context.names_of(c.shared_attrs)}, {"tests", c.tests}});
  return {{"failureAttr", report.failure_attribute}, {"clusters", std::move(clusters)}};
}

FeatureNeighborhood feature_neighbors(const FormalContext& ctx, const std::vector<std::string>& tags) {
  const AttributeSet tagset = ctx.attributes_from_names(tags);
  const FormalConcept focus = concept_for(ctx, tagset);
  const ConceptLattice lat = build_lattice(ctx);
  const Neighbors n = neighbors(lat, focus);
  FeatureNeighborhood out{named(ctx, focus), {}, {}};
  for (const auto& c : n.upper) out.upper.push_back(named(ctx, c));
  for (const auto& c : n.lower) out.lower.push_back(named(ctx, c));
  return out;
}

std::string neighborhood_to_text(const FeatureNeighborhood& n) {
  std::ostringstream out;
  const auto line = [&](const NamedConcept& c) {
    out << "({" << join(c.extent) << "}, {" << join(c.intent) << "})\n";
  };
  out << "concept: ";
  line(n.focus);
  out << "more general:\n";
  for (const auto& c : n.upper) {
    out << "  ";
    line(c);
  }
  out << "more specific:\n";
  for (const auto& c : n.lower) {
    out << "  ";
    line(c);
  }
  return out.str();
}

nlohmann::json neighborhood_to_json(const FeatureNeighborhood& n) {
  nlohmann::json upper = nlohmann::json::array(), lower = nlohmann::json::array();
  for (const auto& c : n.upper) upper.push_back(concept_json(c));
  for (const auto& c : n.lower) lower.push_back(concept_json(c));
  return {{"concept", concept_json(n.focus)}, {"upper", std::move(upper)}, {"lower", std::move(lower)}};
}

PictModel export_pict(const ImplicationSet& base, const std::vector<std::string>& attrs) {
  if (attrs.size() != base.width()) throw DimensionError("attribute list does not match implication width");
  for (const auto& a : attrs)
    if (a.find(']') != std::string::npos) throw NamingError("attribute name '" + a + "' contains ']'");
  PictModel model;
  for (const auto& imp : base) {
    if (imp.conclusion().empty()) continue;
    const auto then = pict_conjunction(imp.conclusion(), attrs);
    if (imp.premise().empty())
      model.lines.push_back(then + ";");
    else
      model.lines.push_back("IF " + pict_conjunction(imp.premise(), attrs) + " THEN " + then + ";");
  }
  return model;
}

}  // namespace fca
