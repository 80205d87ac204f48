#pragma once

#include <string>
#include <vector>

#include "belyi/enumerate.hpp"

namespace belyi {

/// Bicolored ribbon graph of a connected covering. Edges are labeled 1..n;
/// each vertex lists its edges in their cyclic order.
struct Dessin {
  int edges = 0;
  std::vector<std::vector<int>> black;  // cycles of g0
  std::vector<std::vector<int>> white;  // cycles of g1
  std::vector<std::vector<int>> faces;  // cycles of g_inf
};

/// Throws InputError for a disconnected class.
Dessin dessin_from_class(const CoveringClass& c);
Dessin dessin_from_triple(const MonodromyTriple& t);

/// Genus from V - E + F = 2 - 2g; throws InvariantError if that is not a
/// nonnegative integer.
int euler_genus(const Dessin& d);

/// Graphviz text: black vertices filled, white vertices hollow, one labeled
/// edge per dessin edge, cyclic orders in a "cyclic_order" attribute.
std::string export_dot(const Dessin& d, const std::string& name = "dessin");

}  // namespace belyi
