#include "wsts/ikm.hpp"

#include "json.hpp"

namespace wsts {

IdealDecomposition clover(const IkmTree<IdealVec>& tree) {
  std::vector<IdealVec> ideals;
  ideals.reserve(tree.size());
  for (const auto& n : tree.nodes()) ideals.push_back(n.ideal);
  return decompose(ideals);
}

bool coverable(const IkmTree<IdealVec>& tree, const Marking& y) {
  const auto& nodes = tree.nodes();
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const auto& n) { return contains(n.ideal, y); });
}

std::string tree_to_json(const IkmTree<IdealVec>& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    nlohmann::json j = {{"id", i}, {"ideal", n.ideal.to_string()}, {"numaccel", n.numaccel}};
    j["parent"] = n.parent ? nlohmann::json(*n.parent) : nlohmann::json(nullptr);
    j["label"] = n.in_label ? nlohmann::json(tree.alphabet()[*n.in_label]) : nlohmann::json(nullptr);
    if (n.subsumed_by) j["subsumed_by"] = *n.subsumed_by;
    if (n.accelerated_by) j["accelerated_by"] = *n.accelerated_by;
    nodes.push_back(std::move(j));
  }
  nlohmann::json out = {{"nodes", nodes},
                        {"stats",
                         {{"nodes", tree.stats().nodes},
                          {"accelerations", tree.stats().accelerations},
                          {"max_level", tree.stats().max_level}}},
                        {"clover", nlohmann::json::parse(clover_to_json(clover(tree)))}};
  return out.dump(2);
}

std::string clover_to_json(const IdealDecomposition& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : c) arr.push_back(v.to_string());
  return arr.dump();
}

}  // namespace wsts
