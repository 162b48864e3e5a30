#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "pfk/error.hpp"
#include "pfk/graph.hpp"

using namespace pfk;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

std::vector<int> sorted_degrees(const Graph& g) {
  auto d = g.degrees();
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("edge lists") {
  std::vector<Edge> one{{0, 1}};
  Graph g = from_edge_list(one);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);

  std::vector<Edge> tri{{0, 1}, {1, 2}, {2, 0}};
  CHECK(from_edge_list(tri).degrees() == std::vector<int>{2, 2, 2});

  std::vector<Edge> dup{{0, 1}, {0, 1}};
  CHECK(code_of([&] { from_edge_list(dup); }) == ErrorCode::DuplicateEdge);
  std::vector<Edge> rev{{0, 1}, {1, 0}};
  CHECK(code_of([&] { from_edge_list(rev); }) == ErrorCode::DuplicateEdge);
  std::vector<Edge> loop{{2, 2}};
  CHECK(code_of([&] { from_edge_list(loop); }) == ErrorCode::SelfLoop);
  std::vector<Edge> neg{{-1, 2}};
  CHECK(code_of([&] { from_edge_list(neg); }) == ErrorCode::NegativeVertex);
  CHECK(code_of([&] { from_edge_list({}); }) == ErrorCode::EmptyEdgeList);
}

TEST_CASE("handshake identity") {
  for (int n = 4; n <= 9; ++n) {
    for (int i = 3; i < n; ++i) {
      const Graph g = tadpole(n, i).graph();
      int sum = 0;
      for (int d : g.degrees()) sum += d;
      CHECK(sum == 2 * g.edge_count());
    }
  }
}

TEST_CASE("domain validation") {
  const DomainGraph p3 = path_graph(3);
  CHECK(std::vector<Vertex>(p3.boundary().begin(), p3.boundary().end()) == std::vector<Vertex>{0, 2});
  CHECK(std::vector<Vertex>(p3.interior().begin(), p3.interior().end()) == std::vector<Vertex>{1});

  std::vector<Edge> tri{{0, 1}, {1, 2}, {2, 0}};
  CHECK(code_of([&] { validate_domain(from_edge_list(tri)); }) == ErrorCode::NoBoundary);
  std::vector<Edge> one{{0, 1}};
  CHECK(code_of([&] { validate_domain(from_edge_list(one)); }) == ErrorCode::NoInterior);
  std::vector<Edge> split{{0, 1}, {1, 2}, {3, 4}, {4, 5}};
  CHECK(code_of([&] { validate_domain(from_edge_list(split)); }) == ErrorCode::Disconnected);
  // isolated vertex 1 is a separate component
  std::vector<Edge> gap{{0, 2}, {2, 3}};
  CHECK(code_of([&] { validate_domain(from_edge_list(gap)); }) == ErrorCode::Disconnected);
}

TEST_CASE("tadpoles and paths") {
  CHECK(sorted_degrees(tadpole(4, 3).graph()) == std::vector<int>{1, 2, 2, 3});
  const DomainGraph t64 = tadpole(6, 4);
  CHECK(t64.edge_count() == 6);
  CHECK(t64.boundary().size() == 1);
  const auto d = t64.graph().degrees();
  CHECK(*std::max_element(d.begin(), d.end()) == 3);
  CHECK(code_of([] { tadpole(3, 3); }) == ErrorCode::InvalidParams);

  // end vertex t_n is id n-1, neck t_i is id i-1, head is a cycle
  const DomainGraph t73 = tadpole(7, 3);
  CHECK(t73.boundary()[0] == 6);
  CHECK(t73.degree(2) == 3);
  CHECK(t73.graph().adjacent(0, 1));
  CHECK(t73.graph().adjacent(0, 2));
  CHECK(t73.graph().adjacent(1, 2));

  const DomainGraph p3 = path_graph(3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.boundary().size() == 2);
  CHECK(path_graph(5).graph().degrees() == std::vector<int>{1, 2, 2, 2, 1});
  CHECK(code_of([] { path_graph(2); }) == ErrorCode::InvalidParams);
}

TEST_CASE("permutations and vertex removal") {
  const Graph g = tadpole(5, 3).graph();
  std::vector<Vertex> id{0, 1, 2, 3, 4};
  CHECK(apply_permutation(g, id) == g);
  std::vector<Vertex> bad{0, 0, 2, 3, 4};
  CHECK(code_of([&] { apply_permutation(g, bad); }) == ErrorCode::NotABijection);
  std::vector<Vertex> shift{1, 2, 3, 4, 0};
  const Graph h = apply_permutation(g, shift);
  CHECK(h.edge_count() == g.edge_count());
  for (auto [u, v] : g.edges()) CHECK(h.adjacent(shift[u], shift[v]));

  const Graph r = remove_vertex(g, 4);
  CHECK(r.vertex_count() == 4);
  CHECK(r.edge_count() == 4);
}

TEST_CASE("edge-list text round trip") {
  std::istringstream in("# comment\n0 1\n\n1 2  \n2 3\n");
  const auto edges = parse_edge_list(in);
  CHECK(edges.size() == 3);
  std::ostringstream out;
  write_edge_list(out, from_edge_list(edges));
  std::istringstream again(out.str());
  CHECK(parse_edge_list(again) == edges);

  std::istringstream junk("0 1\n1 x\n");
  CHECK(code_of([&] { parse_edge_list(junk); }) == ErrorCode::ParseError);
  std::istringstream extra("0 1 2\n");
  CHECK(code_of([&] { parse_edge_list(extra); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_edge_list_file("/nonexistent/file.edges"); }) == ErrorCode::IoError);
}
