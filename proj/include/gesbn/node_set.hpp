#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace gesbn {

// Bitmask over node indices. Graphs are limited to 64 nodes.
using NodeSet = std::uint64_t;
inline constexpr int kMaxNodes = 64;

constexpr NodeSet singleton(int v) { return NodeSet{1} << v; }
constexpr bool contains(NodeSet s, int v) { return ((s >> v) & 1U) != 0; }
constexpr int cardinality(NodeSet s) { return std::popcount(s); }
constexpr NodeSet all_nodes(int n) { return n >= kMaxNodes ? ~NodeSet{0} : singleton(n) - 1; }
constexpr int lowest(NodeSet s) { return std::countr_zero(s); }

inline std::vector<int> members(NodeSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality(s)));
  for (; s != 0; s &= s - 1) out.push_back(lowest(s));
  return out;
}

inline NodeSet make_set(std::initializer_list<int> nodes) {
  NodeSet s = 0;
  for (int v : nodes) s |= singleton(v);
  return s;
}

// Calls fn(sub) for every subset of `s`, starting with the empty set.
template <typename Fn>
void for_each_subset(NodeSet s, Fn&& fn) {
  NodeSet sub = 0;
  while (true) {
    fn(sub);
    if (sub == s) break;
    sub = (sub - s) & s;
  }
}

}  // namespace gesbn
