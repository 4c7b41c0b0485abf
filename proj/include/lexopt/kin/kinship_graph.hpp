#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexopt::kin {

/// Family members of the five-generation tree in canonical order: the 32
/// non-ego members first (grandparents, parents, aunts and uncles, siblings,
/// children, nieces and nephews, grandchildren), then ego at index 32.
inline constexpr std::size_t kNumMembers = 33;
inline constexpr std::size_t kNumRelatives = 32;
inline constexpr std::size_t kEgoIndex = 32;

enum class EgoIdentity { kBob, kAlice };
enum class Gender { kMale, kFemale };
enum class Relation { kParentOf = 0, kChildOf = 1 };
inline constexpr std::size_t kNumRelations = 2;

/// Relative age marker. kNone where the attribute does not apply.
enum class AgeMark { kOlder, kYounger, kNone };

struct KinMember {
  std::string label;
  int generation = 0;  // 1 (grandparents) .. 5 (grandchildren)
  bool is_ego = false;
};

/// Static facts about a member, independent of ego identity.
struct MemberInfo {
  std::string_view label;
  std::string_view full_name;
  int generation;
  std::optional<Gender> gender;  // empty for ego
  AgeMark age_vs_ego;
  AgeMark age_vs_parent;
};

std::span<const MemberInfo> member_inventory();

/// Canonical index of a label (including "ego"); empty if unknown.
std::optional<std::size_t> member_index(std::string_view label);

/// Direct parent links of the tree as (parent, child) index pairs.
std::span<const std::pair<std::size_t, std::size_t>> parent_links();

struct Edge {
  std::size_t src;
  std::size_t dst;
  Relation relation;  // src <relation> dst, e.g. F parent-of Be

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Each categorical attribute uses three one-hot slots: value A, value B and
/// not-applicable.
inline constexpr std::size_t kFeatureDim = 12;
using FeatureRow = std::array<double, kFeatureDim>;

class KinshipGraph {
 public:
  KinshipGraph(EgoIdentity ego, std::vector<KinMember> nodes, std::vector<Edge> edges);

  EgoIdentity ego_identity() const noexcept { return ego_; }
  std::size_t ego() const noexcept { return kEgoIndex; }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  const std::vector<KinMember>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<FeatureRow>& features() const noexcept { return features_; }

  /// Sources j of edges (j, i, relation), ascending.
  std::vector<std::size_t> in_neighbors(std::size_t node, Relation relation) const;

  /// Undirected hop distance of every node from ego; -1 where unreachable.
  std::vector<int> distances_from_ego() const;

 private:
  EgoIdentity ego_;
  std::vector<KinMember> nodes_;
  std::vector<Edge> edges_;
  std::vector<FeatureRow> features_;
};

KinshipGraph build_kinship_graph(EgoIdentity ego);

/// Shortest-path tree rooted at ego. BFS over the undirected view; each node
/// keeps the link to the first-visited neighbor one hop closer to ego, with
/// neighbors scanned in canonical index order. Both directed edges of a kept
/// link survive. Throws ValidationError if some node is unreachable.
KinshipGraph prune_graph(const KinshipGraph& graph);

/// Feature slots: [male, female, n/a] [same gender as ego, different, n/a]
/// [older than ego, younger, n/a] [older than parent link, younger, n/a].
/// Pure function of ego identity and member facts.
std::vector<FeatureRow> encode_node_features(const KinshipGraph& graph);

/// `src<TAB>relation<TAB>dst` lines with a header, for inspection.
std::string export_edge_list(const KinshipGraph& graph);

std::string_view relation_name(Relation r);
std::string_view ego_name(EgoIdentity e);
EgoIdentity parse_ego(std::string_view text);

}  // namespace lexopt::kin
