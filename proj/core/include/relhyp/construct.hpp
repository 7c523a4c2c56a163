#ifndef RELHYP_CONSTRUCT_HPP_
#define RELHYP_CONSTRUCT_HPP_

#include <optional>
#include <random>
#include <vector>

#include "relhyp/diagram.hpp"

namespace relhyp {

// Builds disk diagrams cell by cell. The exterior face is kept as the last
// face; its corner labels are placeholders until build() sets each one so
// that its vertex label is trivial.
class DiskBuilder {
 public:
  explicit DiskBuilder(AlphabetPtr alphabet);

  // The first cell: an n-gon on n fresh vertices.
  void start(CellCycle const& cell);

  // Glues `cell`, rotated so that its traversal r comes first, onto the
  // exterior arc of `length` consecutive traversals starting at exterior
  // position `pos`. The arc's inner vertices become interior. Throws
  // kInvalidArgument when the edge signs do not match.
  void glue(int pos, int length, CellCycle const& cell, int r);

  // A path of `length` new edges pointing away from the vertex of exterior
  // corner `pos`, walked out and back by the exterior. Realizes the
  // conjugation of the exterior label by t^length.
  void attach_spike(int pos, int length);

  int exterior_size() const {
    return static_cast<int>(faces_.back().edges.size());
  }
  // Sign of the exterior traversal at pos.
  int exterior_sign(int pos) const {
    return faces_.back().edges[pos].sign;
  }
  // Interior face across the exterior traversal at pos.
  int face_across(int pos) const;
  // Faces so far, the exterior included.
  int face_count() const {
    return static_cast<int>(faces_.size());
  }
  // The interior faces on both sides of an edge read mutually inverse labels
  // from it.
  bool edge_is_reducible(int edge) const;
  // Edge index of the exterior traversal at pos.
  int exterior_edge(int pos) const {
    return faces_.back().edges[pos].edge;
  }

  Diagram build() const;

 private:
  int  new_vertex() { return next_vertex_++; }
  int  new_edge(int from, int to, int sign);
  int  start_vertex(Traversal tr) const;
  void rotate_exterior(int pos);

  AlphabetPtr            alphabet_;
  std::vector<EdgeSpec>  edges_;
  std::vector<FaceSpec>  faces_;  // exterior last
  int                    next_vertex_ = 0;
};

// Sets every exterior corner so that all vertex labels are trivial. At a
// vertex with several exterior corners the first one clockwise takes the
// whole correction and the others become 1.
Diagram fix_exterior_corners(Diagram const& d);

// Corner cycles of the relator cells.
CellCycle phi_cell(RelatorCells const& cells, FPElement const& p);
CellCycle k_cell(RelatorCells const& cells, int sign);

// One phi-cell with label p^t (p^phi)^-1 and the exterior.
Diagram phi_bigon(RelatorCells const& cells, FPElement const& p);
// One k-cell of the given sign and the exterior.
Diagram kcell_disk(RelatorCells const& cells, int sign);
// A positive k-cell with its mirror image folded onto the two edges around
// corner b_0: a reducible pair whose shared vertex is an interior sink.
Diagram mirror_pair(RelatorCells const& cells);
// Two phi-cells glued along an edge: reduced but not phi-reduced.
Diagram phi_pair(RelatorCells const& cells, FPElement const& p, FPElement const& q);

struct RandomDiagramOptions {
  int  faces = 10;
  // Chance that a new cell is a phi-cell (only when s > 0).
  double phi_share = 0.3;
  // Refuse gluings that create reducible pairs or phi-cells sharing edges.
  bool phi_reduced = true;
  // Spike length added at exterior corner 0 when the exterior lacks (++) or
  // (--) corners and m > 0. 0 disables.
  int spike = 2;
};

// Tree-like random gluing of relator cells along single edges. Always valid
// over `cells`.
Diagram random_diagram(std::mt19937& rng, RelatorCells const& cells, RandomDiagramOptions const& options);

// True when the exterior face has both a (++) and a (--) corner.
bool exterior_has_stop_corners(Diagram const& d);

}  // namespace relhyp

#endif  // RELHYP_CONSTRUCT_HPP_
