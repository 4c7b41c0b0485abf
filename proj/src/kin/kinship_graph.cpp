#include "lexopt/kin/kinship_graph.hpp"

#include <algorithm>
#include <deque>

#include "lexopt/error.hpp"

namespace lexopt::kin {
namespace {

constexpr auto M = Gender::kMale;
constexpr auto W = Gender::kFemale;
constexpr auto O = AgeMark::kOlder;
constexpr auto Y = AgeMark::kYounger;
constexpr auto N = AgeMark::kNone;

// The y/e marker of aunts, uncles, siblings and the siblings' children is
// carried by the age-vs-parent attribute: for MZy it says the aunt is younger
// than the connecting parent M; for ZyD that her parent is ego's younger sister.
constexpr MemberInfo kInventory[kNumMembers] = {
    {"MM", "mother's mother", 1, W, O, N},
    {"MF", "mother's father", 1, M, O, N},
    {"FM", "father's mother", 1, W, O, N},
    {"FF", "father's father", 1, M, O, N},
    {"M", "mother", 2, W, O, N},
    {"F", "father", 2, M, O, N},
    {"MZy", "mother's younger sister", 2, W, O, Y},
    {"MBy", "mother's younger brother", 2, M, O, Y},
    {"MZe", "mother's elder sister", 2, W, O, O},
    {"MBe", "mother's elder brother", 2, M, O, O},
    {"FZy", "father's younger sister", 2, W, O, Y},
    {"FBy", "father's younger brother", 2, M, O, Y},
    {"FZe", "father's elder sister", 2, W, O, O},
    {"FBe", "father's elder brother", 2, M, O, O},
    {"Zy", "younger sister", 3, W, Y, Y},
    {"By", "younger brother", 3, M, Y, Y},
    {"Ze", "elder sister", 3, W, O, O},
    {"Be", "elder brother", 3, M, O, O},
    {"D", "daughter", 4, W, Y, N},
    {"S", "son", 4, M, Y, N},
    {"ZyD", "younger sister's daughter", 4, W, Y, Y},
    {"ZyS", "younger sister's son", 4, M, Y, Y},
    {"ByD", "younger brother's daughter", 4, W, Y, Y},
    {"ByS", "younger brother's son", 4, M, Y, Y},
    {"ZeD", "elder sister's daughter", 4, W, Y, O},
    {"ZeS", "elder sister's son", 4, M, Y, O},
    {"BeD", "elder brother's daughter", 4, W, Y, O},
    {"BeS", "elder brother's son", 4, M, Y, O},
    {"DD", "daughter's daughter", 5, W, Y, N},
    {"DS", "daughter's son", 5, M, Y, N},
    {"SD", "son's daughter", 5, W, Y, N},
    {"SS", "son's son", 5, M, Y, N},
    {"ego", "ego", 3, std::nullopt, N, N},
};

// (parent, child), grouped by child in canonical order.
constexpr std::pair<std::size_t, std::size_t> kParentLinks[] = {
    {0, 4},   {1, 4},                                  // M
    {2, 5},   {3, 5},                                  // F
    {0, 6},   {1, 6},   {0, 7},   {1, 7},              // MZy MBy
    {0, 8},   {1, 8},   {0, 9},   {1, 9},              // MZe MBe
    {2, 10},  {3, 10},  {2, 11},  {3, 11},             // FZy FBy
    {2, 12},  {3, 12},  {2, 13},  {3, 13},             // FZe FBe
    {4, 14},  {5, 14},  {4, 15},  {5, 15},             // Zy By
    {4, 16},  {5, 16},  {4, 17},  {5, 17},             // Ze Be
    {32, 18}, {32, 19},                                // D S
    {14, 20}, {14, 21}, {15, 22}, {15, 23},            // Zy's, By's children
    {16, 24}, {16, 25}, {17, 26}, {17, 27},            // Ze's, Be's children
    {18, 28}, {18, 29}, {19, 30}, {19, 31},            // grandchildren
    {4, 32},  {5, 32},                                 // ego
};

std::size_t slot(AgeMark m) {
  switch (m) {
    case AgeMark::kOlder: return 0;
    case AgeMark::kYounger: return 1;
    case AgeMark::kNone: return 2;
  }
  return 2;
}

}  // namespace

std::span<const MemberInfo> member_inventory() { return kInventory; }

std::span<const std::pair<std::size_t, std::size_t>> parent_links() { return kParentLinks; }

std::optional<std::size_t> member_index(std::string_view label) {
  for (std::size_t i = 0; i < kNumMembers; ++i) {
    if (kInventory[i].label == label) return i;
  }
  return std::nullopt;
}

std::string_view relation_name(Relation r) {
  return r == Relation::kParentOf ? "parent-of" : "child-of";
}

std::string_view ego_name(EgoIdentity e) { return e == EgoIdentity::kBob ? "Bob" : "Alice"; }

EgoIdentity parse_ego(std::string_view text) {
  if (text == "Bob") return EgoIdentity::kBob;
  if (text == "Alice") return EgoIdentity::kAlice;
  throw ValidationError("unknown ego identity '" + std::string(text) + "'");
}

KinshipGraph::KinshipGraph(EgoIdentity ego, std::vector<KinMember> nodes, std::vector<Edge> edges)
    : ego_(ego), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (nodes_.size() != kNumMembers) throw ValidationError("kinship graph needs 33 nodes");
  std::size_t egos = 0;
  for (const auto& n : nodes_) egos += n.is_ego ? 1 : 0;
  if (egos != 1 || !nodes_[kEgoIndex].is_ego) {
    throw ValidationError("kinship graph needs exactly one ego at the ego index");
  }
  for (const auto& e : edges_) {
    if (e.src >= nodes_.size() || e.dst >= nodes_.size() || e.src == e.dst) {
      throw ValidationError("kinship graph edge out of range");
    }
    const Relation back = e.relation == Relation::kParentOf ? Relation::kChildOf : Relation::kParentOf;
    if (std::find(edges_.begin(), edges_.end(), Edge{e.dst, e.src, back}) == edges_.end()) {
      throw ValidationError("kinship graph edge without its reverse");
    }
  }
  features_ = encode_node_features(*this);
}

std::vector<std::size_t> KinshipGraph::in_neighbors(std::size_t node, Relation relation) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_) {
    if (e.dst == node && e.relation == relation) out.push_back(e.src);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> KinshipGraph::distances_from_ego() const {
  std::vector<std::vector<std::size_t>> adj(nodes_.size());
  for (const auto& e : edges_) adj[e.src].push_back(e.dst);
  std::vector<int> dist(nodes_.size(), -1);
  std::deque<std::size_t> queue{kEgoIndex};
  dist[kEgoIndex] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

KinshipGraph build_kinship_graph(EgoIdentity ego) {
  std::vector<KinMember> nodes;
  nodes.reserve(kNumMembers);
  for (std::size_t i = 0; i < kNumMembers; ++i) {
    nodes.push_back(KinMember{std::string(kInventory[i].label), kInventory[i].generation,
                              i == kEgoIndex});
  }
  std::vector<Edge> edges;
  edges.reserve(2 * std::size(kParentLinks));
  for (const auto& [parent, child] : kParentLinks) {
    edges.push_back({parent, child, Relation::kParentOf});
    edges.push_back({child, parent, Relation::kChildOf});
  }
  return KinshipGraph(ego, std::move(nodes), std::move(edges));
}

KinshipGraph prune_graph(const KinshipGraph& graph) {
  const std::size_t n = graph.num_nodes();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : graph.edges()) adj[e.src].push_back(e.dst);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> tree_parent(n, kNone);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{graph.ego()};
  seen[graph.ego()] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        tree_parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) {
      throw ValidationError("prune_graph: node " + graph.nodes()[v].label + " is unreachable from ego");
    }
  }

  std::vector<Edge> kept;
  for (const auto& e : graph.edges()) {
    if (tree_parent[e.dst] == e.src || tree_parent[e.src] == e.dst) kept.push_back(e);
  }
  return KinshipGraph(graph.ego_identity(), graph.nodes(), std::move(kept));
}

std::vector<FeatureRow> encode_node_features(const KinshipGraph& graph) {
  const Gender ego_gender = graph.ego_identity() == EgoIdentity::kBob ? Gender::kMale : Gender::kFemale;
  std::vector<FeatureRow> rows(graph.num_nodes());
  for (std::size_t i = 0; i < graph.num_nodes(); ++i) {
    const MemberInfo& info = kInventory[i];
    FeatureRow& row = rows[i];
    row.fill(0.0);
    const Gender g = info.gender.value_or(ego_gender);
    row[g == Gender::kMale ? 0 : 1] = 1.0;
    if (i == kEgoIndex) {
      row[3 + 2] = 1.0;
    } else {
      row[3 + (g == ego_gender ? 0 : 1)] = 1.0;
    }
    row[6 + slot(info.age_vs_ego)] = 1.0;
    row[9 + slot(info.age_vs_parent)] = 1.0;
  }
  return rows;
}

std::string export_edge_list(const KinshipGraph& graph) {
  std::string out = "src\trelation\tdst\n";
  for (const auto& e : graph.edges()) {
    out += graph.nodes()[e.src].label;
    out += '\t';
    out += relation_name(e.relation);
    out += '\t';
    out += graph.nodes()[e.dst].label;
    out += '\n';
  }
  return out;
}

}  // namespace lexopt::kin
