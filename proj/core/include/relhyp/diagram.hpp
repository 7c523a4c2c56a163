#ifndef RELHYP_DIAGRAM_HPP_
#define RELHYP_DIAGRAM_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relhyp/presentation.hpp"
#include "relhyp/word.hpp"

namespace relhyp {

struct EdgeSpec {
  int id;
  int tail;
  int head;
};

// sign +1 walks the edge along its arrow, -1 against it.
struct Traversal {
  int edge;  // edge index, not id
  int sign;
};

// Anticlockwise boundary: corners[i] is followed by edges[i], so the label is
// corners[0] t^e_0 corners[1] t^e_1 ... The exterior face is read the same
// way, with the orientation stored in the file.
struct FaceSpec {
  int                    id;
  bool                   exterior = false;
  std::vector<FPElement> corners;
  std::vector<Traversal> edges;
};

struct CornerRef {
  int face;
  int pos;

  bool operator==(CornerRef const&) const = default;
  auto operator<=>(CornerRef const&) const = default;
};

// An oriented sphere map with t-labelled directed edges and corners labelled
// by elements of H. Immutable once built; make() enforces every structural
// rule and throws kMalformedDiagram otherwise.
class Diagram {
 public:
  // Edge traversals in FaceSpec refer to positions in `edges`.
  static Diagram make(AlphabetPtr alphabet, std::vector<EdgeSpec> edges, std::vector<FaceSpec> faces);

  AlphabetPtr const& alphabet() const noexcept {
    return alphabet_;
  }
  std::vector<EdgeSpec> const& edges() const noexcept {
    return edges_;
  }
  std::vector<FaceSpec> const& faces() const noexcept {
    return faces_;
  }
  int exterior() const noexcept {
    return exterior_;
  }
  int vertex_count() const noexcept {
    return static_cast<int>(vertices_.size());
  }
  int edge_count() const noexcept {
    return static_cast<int>(edges_.size());
  }
  int face_count() const noexcept {
    return static_cast<int>(faces_.size());
  }
  int euler_characteristic() const noexcept {
    return vertex_count() - edge_count() + face_count();
  }

  FPElement const& corner_label(CornerRef c) const {
    return faces_[c.face].corners[c.pos];
  }
  // Vertex index of a corner.
  int vertex_of(CornerRef c) const {
    return corner_vertex_[c.face][c.pos];
  }
  // Vertex id as written in the file.
  int vertex_id(int v) const {
    return vertex_ids_[v];
  }
  // Corners around vertex v in clockwise order.
  std::vector<CornerRef> const& vertex_corners(int v) const {
    return vertices_[v];
  }
  // Next corner clockwise around the same vertex.
  CornerRef succ(CornerRef c) const;
  // Where edge e is walked with the given sign: (face, position in edges).
  CornerRef traversal(int edge, int sign) const {
    return sign > 0 ? forward_[edge] : backward_[edge];
  }
  int edge_index(int id) const;
  int face_index(int id) const;

 private:
  Diagram() = default;

  AlphabetPtr                   alphabet_;
  std::vector<EdgeSpec>         edges_;
  std::vector<FaceSpec>         faces_;
  int                           exterior_ = -1;
  std::vector<CornerRef>        forward_, backward_;
  std::vector<std::vector<int>> corner_vertex_;
  std::vector<std::vector<CornerRef>> vertices_;
  std::vector<int>              vertex_ids_;
};

// Label of a vertex: the product of its corner labels in clockwise order,
// starting from the first corner of vertex_corners(v).
FPElement vertex_label(Diagram const& d, int v);

// Label read anticlockwise from corner 0, reduced.
TWord face_word(Diagram const& d, int f);
// face_word up to cyclic permutation.
TWord face_label(Diagram const& d, int f);
// Label read from the traversal at position pos: t^e_pos corners[pos+1] ...
// corners[pos].
TWord face_word_from_edge(Diagram const& d, int f, int pos);

// A cyclic word split at its t-letters: corners[i] is followed by t^signs[i].
struct CellCycle {
  std::vector<FPElement> corners;
  std::vector<int>       signs;

  std::size_t size() const noexcept {
    return signs.size();
  }
};

// Needs at least one t-letter. The rotation starts with the H-part before the
// first t-letter, so the cycle of c t b_0 t^-1 ... a_m t starts at c.
CellCycle cell_cycle(TWord const& w);
// The cycle of the inverse word, rotated to start at corners[0]^-1.
CellCycle inverse_cycle(CellCycle const& cycle);

// The relators an interior face may carry.
struct RelatorCells {
  AlphabetPtr alphabet;
  CellCycle   period;  // one period of the k-cell label
  int         k = 2;
  int         m = -1;   // -1 for the starting presentation
  bool        phi_cells = false;
  int         s = 0;

  static RelatorCells from(NormalizedPresentation const& np);
  static RelatorCells from(RelatorPresentation const& p);
};

enum class FaceKind { kExterior, kPhiCell, kKCell, kUnknown };

struct FaceClass {
  FaceKind                 kind = FaceKind::kUnknown;
  std::optional<FPElement> p;   // phi-cells: the label is p^t (p^phi)^-1
  int                      sign = 0;  // k-cells: +1 for v^k, -1 for v^-k
  // k-cells: face position of relator corner c (c^-1 for negative cells).
  // phi-cells: position of the corner labelled p.
  int         offset = 0;
  std::string note;
};

struct ReduciblePair {
  int edge;
  int face_a;  // walks the edge along its arrow
  int face_b;
};

struct ValidationReport {
  int                        vertices = 0, edges = 0, faces = 0, euler = 0;
  std::vector<bool>          vertex_ok;
  std::vector<FaceClass>     face_class;
  std::vector<ReduciblePair> reducible_pairs;
  std::vector<int>           shared_phi_edges;  // edges between two phi-cells
  bool                       phi_reduced = false;

  bool valid() const;
  int  phi_cell_count() const;
  int  k_cell_count() const;
};

FaceClass        classify_face(Diagram const& d, int f, RelatorCells const& cells);
ValidationReport validate(Diagram const& d, RelatorCells const& cells);
ValidationReport validate(Diagram const& d, NormalizedPresentation const& np);

std::vector<ReduciblePair> find_reducible_pairs(Diagram const& d);
bool                       is_phi_reduced(Diagram const& d, RelatorCells const& cells);

// (previous traversal sign, next traversal sign) along the anticlockwise
// boundary. kPlusMinus corners have both edges pointing in, kMinusPlus both
// pointing out.
enum class CornerType { kPlusPlus, kMinusMinus, kPlusMinus, kMinusPlus };
enum class VertexKind { kSink, kSource, kMixed };

char const* to_string(CornerType type) noexcept;
char const* to_string(VertexKind kind) noexcept;

CornerType corner_type(Diagram const& d, CornerRef c);
VertexKind classify_vertex(Diagram const& d, int v);
// (++) and (--) corners alternate around v; without either, v is a sink or a
// source.
bool alternation_holds(Diagram const& d, int v);

// Smallest n in [0, |u|] such that the reduced t^-n u t^n has subwords
// t g t and t^-1 g' t^-1 (g, g' in H, possibly trivial). With m = 0 nothing
// is needed and (u, 0) comes back. Throws kNoSuchConjugate.
std::pair<TWord, int> ensure_exterior_corners(TWord const& u, int m);

}  // namespace relhyp

#endif  // RELHYP_DIAGRAM_HPP_
