#include "belyi/dessin.hpp"

#include <sstream>

namespace belyi {

namespace {

std::vector<std::vector<int>> one_based_cycles(const Permutation& p) {
  auto cycles = p.cycles();
  for (auto& c : cycles) {
    for (auto& x : c) ++x;
  }
  return cycles;
}

std::string rotation(const std::vector<int>& cycle) {
  std::string s;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(cycle[i]);
  }
  return s;
}

}  // namespace

Dessin dessin_from_triple(const MonodromyTriple& t) {
  if (!t.multiplies_to_identity()) throw InputError("dessin: triple does not multiply to the identity");
  if (!t.transitive()) throw InputError("dessin: covering is disconnected");
  Dessin d;
  d.edges = t.degree();
  d.black = one_based_cycles(t.g0);
  d.white = one_based_cycles(t.g1);
  d.faces = one_based_cycles(t.g_inf);
  return d;
}

Dessin dessin_from_class(const CoveringClass& c) {
  if (!c.connected) throw InputError("dessin: class " + c.scheme.bracketed() + " is disconnected");
  return dessin_from_triple(c.triple);
}

int euler_genus(const Dessin& d) {
  const int vertices = static_cast<int>(d.black.size() + d.white.size());
  const int chi = vertices - d.edges + static_cast<int>(d.faces.size());
  if ((2 - chi) % 2 != 0 || chi > 2) {
    throw InvariantError("Euler characteristic " + std::to_string(chi) + " does not give a genus");
  }
  return (2 - chi) / 2;
}

std::string export_dot(const Dessin& d, const std::string& name) {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  out << "  // black: preimages of 0; white: preimages of 1; faces: cycles of g_inf\n";
  out << "  genus=" << euler_genus(d) << ";\n";
  std::vector<int> black_of(static_cast<std::size_t>(d.edges) + 1);
  std::vector<int> white_of(static_cast<std::size_t>(d.edges) + 1);
  for (std::size_t i = 0; i < d.black.size(); ++i) {
    out << "  b" << i + 1 << " [shape=circle, style=filled, fillcolor=black, label=\"\", cyclic_order=\""
        << rotation(d.black[i]) << "\"];\n";
    for (int e : d.black[i]) black_of[static_cast<std::size_t>(e)] = static_cast<int>(i) + 1;
  }
  for (std::size_t i = 0; i < d.white.size(); ++i) {
    out << "  w" << i + 1 << " [shape=circle, style=solid, fillcolor=white, label=\"\", cyclic_order=\""
        << rotation(d.white[i]) << "\"];\n";
    for (int e : d.white[i]) white_of[static_cast<std::size_t>(e)] = static_cast<int>(i) + 1;
  }
  for (int e = 1; e <= d.edges; ++e) {
    out << "  b" << black_of[static_cast<std::size_t>(e)] << " -- w" << white_of[static_cast<std::size_t>(e)]
        << " [label=\"" << e << "\"];\n";
  }
  for (std::size_t i = 0; i < d.faces.size(); ++i) {
    out << "  // face " << i + 1 << ": " << rotation(d.faces[i]) << "\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace belyi
