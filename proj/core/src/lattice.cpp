#include "fca/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace fca {
namespace {

std::vector<ConceptLattice::Cover> compute_covers(const std::vector<FormalConcept>& concepts) {
  std::vector<ConceptLattice::Cover> covers;
  const std::size_t n = concepts.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> above;
    for (std::size_t p = 0; p < n; ++p)
      if (concepts[c].extent.is_proper_subset_of(concepts[p].extent)) above.push_back(p);
    for (auto p : above) {
      const bool minimal = std::none_of(above.begin(), above.end(), [&](std::size_t q) {
        return q != p && concepts[q].extent.is_proper_subset_of(concepts[p].extent);
      });
      if (minimal) covers.emplace_back(c, p);
    }
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

ConceptLattice::ConceptLattice(std::vector<FormalConcept> concepts)
    : concepts_(std::move(concepts)), covers_(compute_covers(concepts_)) {}

ConceptLattice::ConceptLattice(std::vector<FormalConcept> concepts, std::vector<Cover> covers)
    : concepts_(std::move(concepts)), covers_(std::move(covers)) {
  for (const auto& [c, p] : covers_)
    if (c >= concepts_.size() || p >= concepts_.size()) throw DimensionError("cover refers to a missing concept");
  std::sort(covers_.begin(), covers_.end());
}

std::optional<std::size_t> ConceptLattice::find(const AttributeSet& intent) const {
  for (std::size_t i = 0; i < concepts_.size(); ++i)
    if (concepts_[i].intent == intent) return i;
  return std::nullopt;
}

std::size_t ConceptLattice::top() const {
  if (concepts_.empty()) throw NotFoundError("empty lattice has no top");
  std::size_t best = 0;
  for (std::size_t i = 1; i < concepts_.size(); ++i)
    if (concepts_[i].extent.size() > concepts_[best].extent.size()) best = i;
  return best;
}

std::size_t ConceptLattice::bottom() const {
  if (concepts_.empty()) throw NotFoundError("empty lattice has no bottom");
  std::size_t best = 0;
  for (std::size_t i = 1; i < concepts_.size(); ++i)
    if (concepts_[i].extent.size() < concepts_[best].extent.size()) best = i;
  return best;
}

std::vector<std::size_t> ConceptLattice::upper_covers(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& [c, p] : covers_)
    if (c == node) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> ConceptLattice::lower_covers(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& [c, p] : covers_)
    if (p == node) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

ConceptLattice build_lattice(const FormalContext& ctx) { return ConceptLattice(enumerate_concepts(ctx)); }

FormalConcept concept_for(const FormalContext& ctx, const AttributeSet& tags) {
  auto extent = ctx.derive_attrs(tags);
  auto intent = ctx.derive_objects(extent);
  return {std::move(extent), std::move(intent)};
}

Neighbors neighbors(const ConceptLattice& lat, const FormalConcept& c) {
  const auto node = lat.find(c.intent);
  if (!node || lat.concept_at(*node).extent != c.extent) throw NotFoundError("concept is not a node of the lattice");
  Neighbors out;
  for (auto p : lat.upper_covers(*node)) out.upper.push_back(lat.concept_at(p));
  for (auto l : lat.lower_covers(*node)) out.lower.push_back(lat.concept_at(l));
  return out;
}

ConceptLattice top_part(const ConceptLattice& lat, std::size_t depth) {
  if (lat.size() == 0) return lat;
  const std::size_t n = lat.size();
  std::vector<std::size_t> dist(n, n + 1);
  std::deque<std::size_t> queue{lat.top()};
  dist[lat.top()] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (dist[v] == depth) continue;
    for (auto c : lat.lower_covers(v))
      if (dist[c] > dist[v] + 1) {
        dist[c] = dist[v] + 1;
        queue.push_back(c);
      }
  }
  std::vector<std::size_t> remap(n, n);
  std::vector<FormalConcept> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (dist[i] <= depth) {
      remap[i] = kept.size();
      kept.push_back(lat.concept_at(i));
    }
  std::vector<ConceptLattice::Cover> covers;
  for (const auto& [c, p] : lat.covers())
    if (remap[c] != n && remap[p] != n) covers.emplace_back(remap[c], remap[p]);
  return ConceptLattice(std::move(kept), std::move(covers));
}

ConceptLattice top_part(const FormalContext& ctx, std::size_t depth) { return top_part(build_lattice(ctx), depth); }

std::string export_dot(const ConceptLattice& lat, const FormalContext& ctx) {
  // Reduced labelling: attribute m sits on (m', m''), object g on (g'', g').
  std::vector<std::vector<std::string>> attr_labels(lat.size()), obj_labels(lat.size());
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m) {
    AttributeSet single = ctx.no_attributes();
    single.insert(m);
    if (auto node = lat.find(ctx.close_attrs(single))) attr_labels[*node].push_back(ctx.attribute_names()[m]);
  }
  for (std::size_t g = 0; g < ctx.num_objects(); ++g)
    if (auto node = lat.find(ctx.row(g))) obj_labels[*node].push_back(ctx.object_names()[g]);

  std::ostringstream out;
  out << "digraph lattice {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& c = lat.concept_at(i);
    out << "  c" << i << " [label=\"" << escape_dot(join(attr_labels[i], ", ")) << "\\n"
        << escape_dot(join(obj_labels[i], ", ")) << "\\n|I|=" << c.intent.size() << " |E|=" << c.extent.size()
        << "\"];\n";
  }
  for (const auto& [c, p] : lat.covers()) out << "  c" << c << " -> c" << p << ";\n";
  out << "}\n";
  return out.str();
}

nlohmann::json lattice_to_json(const ConceptLattice& lat) {
  nlohmann::json concepts = nlohmann::json::array();
  for (const auto& c : lat.concepts())
    concepts.push_back({{"extent", c.extent.indices()}, {"intent", c.intent.indices()}});
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& [c, p] : lat.covers()) covers.push_back({c, p});
  return {{"concepts", std::move(concepts)}, {"covers", std::move(covers)}};
}

ConceptLattice lattice_from_json(const nlohmann::json& j, std::size_t num_objects, std::size_t num_attributes) {
  try {
    std::vector<FormalConcept> concepts;
    for (const auto& jc : j.at("concepts"))
      concepts.push_back({ObjectSet::from_indices(num_objects, jc.at("extent").get<std::vector<std::size_t>>()),
                          AttributeSet::from_indices(num_attributes, jc.at("intent").get<std::vector<std::size_t>>())});
    std::vector<ConceptLattice::Cover> covers;
    for (const auto& e : j.at("covers")) covers.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    return ConceptLattice(std::move(concepts), std::move(covers));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid lattice JSON: ") + e.what());
  }
}

}  // namespace fca
