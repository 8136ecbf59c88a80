#include "chartdoc/hierarchy.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"

namespace chartdoc {
namespace {

using ParentMap = std::map<std::string, std::set<std::string>>;

void check_acyclic(const ParentMap& parents) {
  // colors: 0 unvisited, 1 on stack, 2 done
  std::map<std::string, int> color;
  std::vector<std::pair<std::string, std::set<std::string>::const_iterator>> stack;
  for (const auto& [start, _] : parents) {
    if (color[start]) continue;
    color[start] = 1;
    stack.push_back({start, parents.at(start).begin()});
    while (!stack.empty()) {
      auto& [name, it] = stack.back();
      const auto& ps = parents.at(name);
      if (it == ps.end()) {
        color[name] = 2;
        stack.pop_back();
        continue;
      }
      const std::string& up = *it++;
      auto pit = parents.find(up);
      int c = color[up];
      if (c == 1) throw CycleDetected("cycle through node '" + up + "'");
      if (c == 0 && pit != parents.end()) {
        color[up] = 1;
        stack.push_back({up, pit->second.begin()});
      } else if (c == 0) {
        color[up] = 2;
      }
    }
  }
}

}  // namespace

EntityHierarchy EntityHierarchy::build(const std::vector<Edge>& dag) {
  ParentMap parents;
  for (const auto& [child, hyps] : dag) {
    if (child.empty()) throw InvalidInput("empty node name");
    auto& ps = parents[child];
    for (const auto& h : hyps) {
      if (h.empty()) throw InvalidInput("empty hypernym name for '" + child + "'");
      if (h == child) throw CycleDetected("self edge on '" + child + "'");
      ps.insert(h);
      parents.emplace(h, std::set<std::string>{});  // implicit node
    }
  }
  check_acyclic(parents);

  std::map<std::string, std::set<std::string>> children;
  for (const auto& [c, ps] : parents)
    for (const auto& p : ps) children[p].insert(c);
  for (const auto& [n, _] : parents) children.emplace(n, std::set<std::string>{});

  auto splice_pass = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = children.begin(); it != children.end();) {
        const std::string name = it->first;
        if (it->second.size() == 1 && !parents[name].empty()) {
          const std::string child = *it->second.begin();
          for (const auto& p : parents[name]) {
            children[p].erase(name);
            children[p].insert(child);
            parents[child].insert(p);
          }
          parents[child].erase(name);
          parents.erase(name);
          it = children.erase(children.find(name));
          changed = true;
        } else {
          ++it;
        }
      }
    }
  };

  // Step 2: remove single-child internal nodes, splicing parent to child.
  splice_pass();
  // Step 3: multi-parent nodes keep only the lexicographically smallest parent.
  for (auto& [name, ps] : parents) {
    while (ps.size() > 1) {
      auto last = std::prev(ps.end());
      children[*last].erase(name);
      ps.erase(last);
    }
  }
  // Dropped edges can leave new single-child nodes behind.
  splice_pass();

  EntityHierarchy h;
  for (const auto& [name, ps] : parents) {
    EntityNode n;
    n.name = name;
    if (!ps.empty()) n.parent = *ps.begin();
    n.children.assign(children[name].begin(), children[name].end());
    h.nodes_.emplace(name, std::move(n));
    if (ps.empty()) h.roots_.push_back(name);
  }
  std::sort(h.roots_.begin(), h.roots_.end());
  return h;
}

EntityHierarchy EntityHierarchy::build_from_edge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open edge list: " + path);
  std::vector<Edge> dag;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto tab = t.find('\t');
    if (tab == std::string::npos)
      throw ParseError(lineno, 1, "expected `child<TAB>parent[,parent...]`");
    std::string child = trim(t.substr(0, tab));
    std::vector<std::string> hyps;
    for (auto& p : split(t.substr(tab + 1), ',')) {
      std::string pt = trim(p);
      if (!pt.empty()) hyps.push_back(std::move(pt));
    }
    dag.push_back({std::move(child), std::move(hyps)});
  }
  return build(dag);
}

std::string EntityHierarchy::serialize() const {
  std::ostringstream out;
  for (const auto& [name, n] : nodes_) {
    out << name << '\t' << (n.parent ? *n.parent : std::string("-"));
    out << '\t';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out << ',';
      out << n.children[i];
    }
    out << '\n';
  }
  return out.str();
}

EntityHierarchy EntityHierarchy::parse(const std::string& text) {
  EntityHierarchy h;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto parts = split(line, '\t');
    if (parts.size() != 3) throw ParseError(lineno, 1, "expected 3 tab-separated fields");
    EntityNode n;
    n.name = parts[0];
    if (parts[1] != "-") n.parent = parts[1];
    for (auto& c : split(parts[2], ','))
      if (!c.empty()) n.children.push_back(c);
    if (!n.parent) h.roots_.push_back(n.name);
    h.nodes_.emplace(n.name, std::move(n));
  }
  std::sort(h.roots_.begin(), h.roots_.end());
  // Closure check.
  for (const auto& [name, n] : h.nodes_) {
    if (n.parent && !h.nodes_.count(*n.parent))
      throw InvariantViolation("dangling parent '" + *n.parent + "' of '" + name + "'");
    for (const auto& c : n.children)
      if (!h.nodes_.count(c))
        throw InvariantViolation("dangling child '" + c + "' of '" + name + "'");
  }
  return h;
}

const EntityNode& EntityHierarchy::node(const std::string& name) const {
  auto it = nodes_.find(name);
  if (it == nodes_.end()) throw UnknownEntity("unknown entity '" + name + "'");
  return it->second;
}

std::pair<std::string, std::string> EntityHierarchy::ancestors(
    const std::string& name) const {
  const EntityNode& n = node(name);
  if (!n.parent) throw RootHasNoAncestors("'" + name + "' is a root");
  const EntityNode& p = node(*n.parent);
  if (!p.parent)
    throw RootHasNoAncestors("'" + name + "' has no grandparent");
  return {p.name, *p.parent};
}

EntitySample EntityHierarchy::sample_entities(
    Rng& rng, int k_parents, int k_children,
    const std::optional<std::string>& grandparent) const {
  if (k_parents < 1 || k_children < 1)
    throw InvalidInput("k_parents and k_children must be >= 1");

  auto qualifying_children = [&](const EntityNode& g) {
    std::vector<std::string> out;
    for (const auto& c : g.children)
      if (static_cast<int>(node(c).children.size()) >= k_children)
        out.push_back(c);
    return out;
  };

  std::string gp;
  if (grandparent) {
    gp = *grandparent;
    if (!contains(gp)) throw UnknownEntity("unknown grandparent '" + gp + "'");
    if (static_cast<int>(qualifying_children(node(gp)).size()) < k_parents)
      throw InsufficientEntities("grandparent '" + gp + "' cannot supply " +
                                 std::to_string(k_parents) + " parents");
  } else {
    std::vector<std::string> candidates;
    for (const auto& [name, n] : nodes_)
      if (static_cast<int>(qualifying_children(n).size()) >= k_parents)
        candidates.push_back(name);
    if (candidates.empty())
      throw InsufficientEntities("no grandparent can supply the requested sample");
    gp = candidates[rng.below(candidates.size())];
  }

  EntitySample s;
  s.grandparent = gp;
  auto qc = qualifying_children(node(gp));
  for (auto i : rng.sample_indices(qc.size(), static_cast<std::size_t>(k_parents)))
    s.parents.push_back(qc[i]);
  for (const auto& p : s.parents) {
    const auto& kids = node(p).children;
    for (auto i : rng.sample_indices(kids.size(), static_cast<std::size_t>(k_children))) {
      s.entities.push_back(kids[i]);
      s.classes[kids[i]] = {p, gp};
    }
  }
  return s;
}

}  // namespace chartdoc
