#pragma once

#include <string>
#include <vector>

#include "pfk/graph.hpp"

namespace pfk {

inline constexpr int kDefaultCanonicalBound = 12;

/// Canonical byte string: the vertex count followed by the lexicographically
/// smallest upper-triangle adjacency bit string over all relabelings that
/// respect the (isomorphism-invariant) refined degree partition. Two graphs
/// share a key iff they are isomorphic.
std::string canonical_key(const Graph& g, int max_vertices = kDefaultCanonicalBound);

/// Lowercase hex rendering of a key, for reports.
std::string key_hex(const std::string& key);

/// Automorphism orbits: entry v is the smallest vertex in the orbit of v.
std::vector<Vertex> automorphism_orbits(const Graph& g);

}  // namespace pfk
