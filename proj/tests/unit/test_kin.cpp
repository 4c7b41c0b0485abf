#include <doctest.h>

#include <deque>
#include <map>
#include <set>

#include "lexopt/error.hpp"
#include "lexopt/kin/count_table.hpp"
#include "lexopt/kin/kinship_graph.hpp"

using namespace lexopt;
using namespace lexopt::kin;

namespace {

const std::filesystem::path kData = LEXOPT_TEST_DATA_DIR;

// Parent links enumerated by hand from the family tree.
const std::vector<std::pair<std::string, std::string>> kParentFixture = {
    {"MM", "M"},   {"MF", "M"},   {"FM", "F"},   {"FF", "F"},   {"MM", "MZy"}, {"MF", "MZy"},
    {"MM", "MBy"}, {"MF", "MBy"}, {"MM", "MZe"}, {"MF", "MZe"}, {"MM", "MBe"}, {"MF", "MBe"},
    {"FM", "FZy"}, {"FF", "FZy"}, {"FM", "FBy"}, {"FF", "FBy"}, {"FM", "FZe"}, {"FF", "FZe"},
    {"FM", "FBe"}, {"FF", "FBe"}, {"M", "Zy"},   {"F", "Zy"},   {"M", "By"},   {"F", "By"},
    {"M", "Ze"},   {"F", "Ze"},   {"M", "Be"},   {"F", "Be"},   {"M", "ego"},  {"F", "ego"},
    {"ego", "D"},  {"ego", "S"},  {"Zy", "ZyD"}, {"Zy", "ZyS"}, {"By", "ByD"}, {"By", "ByS"},
    {"Ze", "ZeD"}, {"Ze", "ZeS"}, {"Be", "BeD"}, {"Be", "BeS"}, {"D", "DD"},   {"D", "DS"},
    {"S", "SD"},   {"S", "SS"}};

std::vector<int> bfs_oracle(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& links,
                            std::size_t root) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : links) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> d(n, -1);
  std::deque<std::size_t> q{root};
  d[root] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (auto v : adj[u]) {
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push_back(v);
      }
    }
  }
  return d;
}

std::set<std::pair<std::size_t, std::size_t>> undirected_links(const KinshipGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (const auto& e : g.edges()) s.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
  return s;
}

std::size_t idx(const char* label) { return *member_index(label); }

const FeatureRow& features_of(const KinshipGraph& g, const char* label) { return g.features()[idx(label)]; }

}  // namespace

TEST_SUITE("kin") {

TEST_CASE("graph has 33 nodes and the hand-enumerated parent links") {
  for (auto ego : {EgoIdentity::kBob, EgoIdentity::kAlice}) {
    const auto g = build_kinship_graph(ego);
    CHECK(g.num_nodes() == 33);
    CHECK(g.edges().size() == 2 * kParentFixture.size());
    std::size_t parent_of = 0;
    for (const auto& e : g.edges()) parent_of += e.relation == Relation::kParentOf ? 1 : 0;
    CHECK(parent_of == 44);
    for (const auto& [p, c] : kParentFixture) {
      const Edge fwd{idx(p.c_str()), idx(c.c_str()), Relation::kParentOf};
      const Edge back{idx(c.c_str()), idx(p.c_str()), Relation::kChildOf};
      CHECK(std::find(g.edges().begin(), g.edges().end(), fwd) != g.edges().end());
      CHECK(std::find(g.edges().begin(), g.edges().end(), back) != g.edges().end());
    }
  }
}

TEST_CASE("F is parent of Be and of ego") {
  const auto g = build_kinship_graph(EgoIdentity::kBob);
  const auto children = [&] {
    std::vector<std::size_t> out;
    for (const auto& e : g.edges()) {
      if (e.src == idx("F") && e.relation == Relation::kParentOf) out.push_back(e.dst);
    }
    return out;
  }();
  CHECK(std::count(children.begin(), children.end(), idx("Be")) == 1);
  CHECK(std::count(children.begin(), children.end(), idx("ego")) == 1);
  CHECK(g.in_neighbors(idx("Be"), Relation::kParentOf) == std::vector<std::size_t>{idx("M"), idx("F")});
}

TEST_CASE("labels unique and generations in range") {
  std::set<std::string_view> labels;
  for (const auto& m : member_inventory()) {
    labels.insert(m.label);
    CHECK(m.generation >= 1);
    CHECK(m.generation <= 5);
  }
  CHECK(labels.size() == 33);
  CHECK(member_inventory()[kEgoIndex].label == "ego");
}

TEST_CASE("graph constructor validation") {
  const auto g = build_kinship_graph(EgoIdentity::kBob);
  auto edges = g.edges();
  edges.pop_back();
  CHECK_THROWS_AS(KinshipGraph(EgoIdentity::kBob, g.nodes(), edges), ValidationError);
  auto nodes = g.nodes();
  nodes[0].is_ego = true;
  CHECK_THROWS_AS(KinshipGraph(EgoIdentity::kBob, nodes, g.edges()), ValidationError);
  nodes = g.nodes();
  nodes.pop_back();
  CHECK_THROWS_AS(KinshipGraph(EgoIdentity::kBob, nodes, {}), ValidationError);
}

TEST_CASE("pruning yields a shortest-path spanning tree") {
  for (auto ego : {EgoIdentity::kBob, EgoIdentity::kAlice}) {
    const auto full = build_kinship_graph(ego);
    const auto pruned = prune_graph(full);
    const auto links = undirected_links(pruned);
    CHECK(links.size() == 32);
    CHECK(pruned.edges().size() == 64);

    std::vector<std::pair<std::size_t, std::size_t>> full_links, tree_links(links.begin(), links.end());
    for (const auto& [p, c] : kParentFixture) full_links.push_back({idx(p.c_str()), idx(c.c_str())});
    const auto d_full = bfs_oracle(33, full_links, kEgoIndex);
    const auto d_tree = bfs_oracle(33, tree_links, kEgoIndex);
    CHECK(d_full == d_tree);
    CHECK(pruned.distances_from_ego() == d_full);
    for (int d : d_tree) CHECK(d >= 0);  // connected with 32 links on 33 nodes => acyclic tree
    CHECK(d_tree[idx("MM")] == 2);
    CHECK(links.count({idx("MM"), idx("M")}) == 1);
  }
}

TEST_CASE("pruning keeps node features and topology is ego-independent") {
  const auto bob = prune_graph(build_kinship_graph(EgoIdentity::kBob));
  const auto alice = prune_graph(build_kinship_graph(EgoIdentity::kAlice));
  CHECK(bob.edges() == alice.edges());
  CHECK(bob.features() == build_kinship_graph(EgoIdentity::kBob).features());
}

TEST_CASE("pruning a disconnected graph fails") {
  const auto g = build_kinship_graph(EgoIdentity::kBob);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (e.src != idx("SS") && e.dst != idx("SS")) edges.push_back(e);
  }
  const KinshipGraph cut(EgoIdentity::kBob, g.nodes(), edges);
  CHECK_THROWS_AS(prune_graph(cut), ValidationError);
}

TEST_CASE("node features") {
  const auto bob = build_kinship_graph(EgoIdentity::kBob);
  const auto alice = build_kinship_graph(EgoIdentity::kAlice);
  // [male female n/a] [same different n/a] [older younger n/a] [older younger n/a]
  const auto& m_bob = features_of(bob, "M");
  CHECK(m_bob[1] == 1.0);
  CHECK(m_bob[4] == 1.0);
  CHECK(features_of(alice, "M")[3] == 1.0);
  CHECK(features_of(bob, "MM")[11] == 1.0);
  CHECK(features_of(bob, "FF")[11] == 1.0);
  CHECK(features_of(bob, "MZy")[10] == 1.0);
  CHECK(features_of(bob, "Be")[6] == 1.0);
  CHECK(features_of(bob, "Be")[9] == 1.0);
  CHECK(features_of(bob, "ZeS")[9] == 1.0);
  CHECK(features_of(bob, "ZeS")[7] == 1.0);
  CHECK(features_of(bob, "ego")[0] == 1.0);
  CHECK(features_of(alice, "ego")[1] == 1.0);
  CHECK(features_of(bob, "ego")[5] == 1.0);
  for (const auto& row : bob.features()) {
    for (std::size_t a = 0; a < 4; ++a) CHECK(row[3 * a] + row[3 * a + 1] + row[3 * a + 2] == 1.0);
  }
  CHECK(encode_node_features(bob) == bob.features());
}

TEST_CASE("edge list export") {
  const auto text = export_edge_list(build_kinship_graph(EgoIdentity::kBob));
  CHECK(text.rfind("src\trelation\tdst\n", 0) == 0);
  CHECK(text.find("F\tparent-of\tBe\n") != std::string::npos);
  CHECK(text.find("Be\tchild-of\tF\n") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 89);
}

TEST_CASE("ego names") {
  CHECK(parse_ego("Alice") == EgoIdentity::kAlice);
  CHECK(ego_name(EgoIdentity::kBob) == "Bob");
  CHECK_THROWS_AS(parse_ego("Carol"), ValidationError);
}

TEST_CASE("load English counts") {
  const auto t = load_count_table(kData / "counts/en.tsv", "en");
  auto find = [&](const char* m, const char* term) {
    for (const auto& r : t.rows) {
      if (r.member == m && r.term == term) return r.count;
    }
    return -1.0;
  };
  CHECK(find("M", "Mother") == 65458.0);
  CHECK(find("ZyD", "Niece") == 326.25);
}

TEST_CASE("count parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_count_table(text, "x", "t.tsv");
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("member\tword\tcount\n") == 1);
  CHECK(line_of("member\tterm\tcount\nM\tMother\t1\nXX\tFoo\t2\n") == 3);
  CHECK(line_of("member\tterm\tcount\nM\tMother\t-1\n") == 2);
  CHECK(line_of("member\tterm\tcount\nM\tMother\tabc\n") == 2);
  CHECK(line_of("member\tterm\tcount\nM\tMother\n") == 2);
  CHECK(line_of("member\tterm\tcount\nego\tMe\t1\n") == 2);
  CHECK(line_of("member\tterm\tcount\nM\tMother\t1\n\nM\tMother\t2\n") == 4);
}

TEST_CASE("polysemy splitting") {
  const std::vector<RawTermCount> raw = {{"Niece", 1305, {"ZyD", "ByD", "ZeD", "BeD"}}, {"Mother", 10, {"M"}}};
  const auto t = split_polysemous_counts(raw, "en");
  double total = 0.0;
  for (const auto& r : t.rows) {
    total += r.count;
    if (r.term == "Niece") CHECK(r.count == 326.25);
    if (r.term == "Mother") CHECK(r.count == 10.0);
  }
  CHECK(t.rows.size() == 5);
  CHECK(t.rows.front().member == "M");  // canonical member order
  CHECK(total == 1315.0);
  CHECK_THROWS_AS(split_polysemous_counts({{"X", 1, {}}}, "en"), ValidationError);
  CHECK_THROWS_AS(parse_raw_counts("term\tcount\tmembers\nX\t1\t\n"), ParseError);
}

TEST_CASE("raw English counts reproduce the post-split table") {
  const auto split = split_polysemous_counts(load_raw_counts(kData / "counts/en_raw.tsv"), "en");
  const auto table = load_count_table(kData / "counts/en.tsv", "en");
  std::map<std::pair<std::string, std::string>, double> a, b;
  for (const auto& r : split.rows) a[{r.member, r.term}] = r.count;
  for (const auto& r : table.rows) b[{r.member, r.term}] = r.count;
  REQUIRE(a.size() == b.size());
  for (const auto& [k, v] : b) CHECK(a[k] == doctest::Approx(v).epsilon(1e-12));
  CHECK(split.total() == doctest::Approx(table.total()).epsilon(1e-12));
}

TEST_CASE("serialize round trip") {
  const auto t = load_count_table(kData / "counts/vi.tsv", "vi");
  const auto back = parse_count_table(serialize_count_table(t), "vi");
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(back.rows[i].count == t.rows[i].count);
}

TEST_CASE("estimation from English counts") {
  const auto est = estimate_system(load_count_table(kData / "counts/en.tsv", "en"));
  const auto& s = est.system;
  const double mother = 65458 + 29849 + 707 + 388;
  double total = 0.0;
  for (const auto& r : load_count_table(kData / "counts/en.tsv", "en").rows) total += r.count;
  CHECK(s.need[idx("M")] == doctest::Approx(mother / total).epsilon(1e-12));
  const auto mom = std::find(s.word_labels.begin(), s.word_labels.end(), "Mom") - s.word_labels.begin();
  CHECK(s.encoder(idx("M"), static_cast<std::size_t>(mom)) == doctest::Approx(29849 / mother).epsilon(1e-12));
  CHECK(s.need.size() == 32);
  CHECK(s.word_labels.size() == 25);
}

TEST_CASE("estimation edge cases") {
  CountTable one{"x", {{"M", "Mother", 3.0}}};
  const auto est = estimate_system(one, {"M"});
  CHECK(est.system.need[0] == 1.0);
  CHECK(est.system.encoder(0, 0) == 1.0);
  try {
    estimate_system(one);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'MM'") != std::string::npos);
  }
}

TEST_CASE("human-language Bayesian systems lie on the optimal curve") {
  std::map<std::string, info::TradeoffPoint> pts;
  for (const char* lang : {"en", "nl", "es", "vi"}) {
    const auto est = estimate_system(load_count_table(kData / "counts" / (std::string(lang) + ".tsv"), lang));
    pts[lang] = info::evaluate_system(est.system);
    CHECK(pts[lang].distance_d < 1e-9);
    CHECK(pts[lang].adjusted_C < 0.0);
  }
  CHECK(pts["en"].entropy_H == doctest::Approx(2.08031).epsilon(1e-5));
  CHECK(pts["en"].complexity_C == doctest::Approx(1.89191).epsilon(1e-5));
  CHECK(pts["vi"].adjusted_C == doctest::Approx(-0.35077).epsilon(1e-5));
  for (const char* other : {"en", "nl", "es"}) {
    CHECK(pts["vi"].adjusted_C < pts[other].adjusted_C);
    CHECK(pts["vi"].info_loss_L > pts[other].info_loss_L);
  }
}

}  // TEST_SUITE
