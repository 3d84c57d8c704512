// Small tour of the library: one instance per solver, each result checked
// against the exhaustive oracle.

#include <iostream>

#include "perfkern/perfkern.hpp"

using namespace perfkern;

namespace {

void show(const char* what, const SuperOrientation& d, const std::optional<VertexSet>& k) {
  std::cout << what << ": n=" << d.size() << " arcs=" << d.arc_count() << "  ";
  if (!k) {
    std::cout << "no kernel";
  } else {
    std::cout << "kernel {" << io::format_vertex_list(*k) << "}";
    if (!verify_kernel(d, *k)) std::cout << "  (does not verify!)";
  }
  if (d.size() <= 20) std::cout << "  oracle finds " << enumerate_kernels(d).size();
  std::cout << '\n';
}

}  // namespace

int main() {
  // Chordal, clique-acyclic, some edges bidirected.
  auto chordal = generate(GenClass::chordal_super, 14, 0.5, 7);
  DecompositionStats st;
  show("chordal super-orientation", chordal.digraph, solve_chordal_super(chordal.digraph, &st));
  std::cout << "  atoms " << st.atom_calls << ", cutsets " << st.cutsets << '\n';

  // Any orientation of a chordal graph: at most one kernel.
  SuperOrientation triangle(3, {{0, 1}, {1, 2}, {2, 0}});
  show("directed triangle", triangle, solve_chordal_orientation(triangle));
  auto any = generate(GenClass::chordal_orientation, 12, 0.4, 3);
  show("chordal orientation", any.digraph, solve_chordal_orientation(any.digraph));

  // Circular-arc orientation, decided through |S| <= 1 guesses.
  auto arcs = generate(GenClass::circular_arc, 12, 0.5, 4);
  CircularArcTrace trace;
  show("circular-arc orientation", arcs.digraph,
       solve_circular_arc_orientation(arcs.digraph, *arcs.representation, &trace));
  std::cout << "  point " << trace.point.str() << ", " << trace.crossing.size() << " arcs cross it, "
            << trace.attempts.size() << " attempts\n";

  // Stable matchings: line graph of a bipartite multigraph.
  auto line = generate(GenClass::line_bipartite, 12, 0.5, 5);
  show("line graph (Gale-Shapley)", line.digraph, solve_line_bipartite(line.digraph, *line.root));

  // Augmented line graph with its certificate.
  auto aug = generate(GenClass::augmented_line, 14, 0.5, 6);
  ReductionTrace rt;
  show("augmented line graph", aug.digraph, solve_augmented_line_graph(aug.digraph, *aug.certificate, &rt));
  std::cout << "  " << rt.gadgets.size() << " gadgets, |Z_h| = " << rt.z.back().size() << '\n';

  // Claw-free: two augmented pieces glued on a clique.
  auto glued = generate(GenClass::clawfree_glued, 16, 0.5, 8);
  show("claw-free glued", glued.digraph, solve_clawfree_orientation(glued.digraph, restrict_from(*glued.certificate)));

  // DE graph: paths in a directed tree.
  auto de = generate(GenClass::de, 14, 0.5, 9);
  show("DE super-orientation", de.digraph, solve_de_super(de.digraph));
}
