#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chartdoc/rng.hpp"

namespace chartdoc {

struct EntityNode {
  std::string name;
  std::optional<std::string> parent;
  std::vector<std::string> children;  // ordered lexicographically
};

struct EntitySample {
  std::string grandparent;
  std::vector<std::string> parents;
  // entity -> (parent, grandparent)
  std::vector<std::string> entities;  // flattened, draw order
  std::map<std::string, std::pair<std::string, std::string>> classes;
};

class EntityHierarchy {
 public:
  using Edge = std::pair<std::string, std::vector<std::string>>;

  // Three-step construction: keep all hypernym chains, splice single-child
  // internal nodes to a fixed point, resolve multi-parent nodes to the
  // lexicographically smallest parent (then re-splice).
  static EntityHierarchy build(const std::vector<Edge>& dag);

  // Edge-list file: one `child<TAB>parent[,parent...]` per line, `#` comments.
  static EntityHierarchy build_from_edge_file(const std::string& path);

  // Canonical tree serialization; round-trips through parse().
  std::string serialize() const;
  static EntityHierarchy parse(const std::string& text);

  const EntityNode& node(const std::string& name) const;
  bool contains(const std::string& name) const { return nodes_.count(name) > 0; }
  const std::vector<std::string>& roots() const { return roots_; }
  std::size_t size() const { return nodes_.size(); }
  const std::map<std::string, EntityNode>& nodes() const { return nodes_; }

  // (parent, grandparent) of a node at depth >= 2.
  std::pair<std::string, std::string> ancestors(const std::string& name) const;

  EntitySample sample_entities(Rng& rng, int k_parents, int k_children,
                               const std::optional<std::string>& grandparent = {}) const;

 private:
  std::map<std::string, EntityNode> nodes_;
  std::vector<std::string> roots_;
};

}  // namespace chartdoc
