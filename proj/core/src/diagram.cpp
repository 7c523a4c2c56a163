#include "relhyp/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

[[noreturn]] void malformed(std::string const& what) {
  throw Error(ErrorCode::kMalformedDiagram, what);
}

int prev_pos(FaceSpec const& face, int pos) {
  int n = static_cast<int>(face.edges.size());
  return (pos + n - 1) % n;
}

}  // namespace

Diagram Diagram::make(AlphabetPtr alphabet, std::vector<EdgeSpec> edges, std::vector<FaceSpec> faces) {
  Diagram d;
  d.alphabet_ = std::move(alphabet);
  d.edges_    = std::move(edges);
  d.faces_    = std::move(faces);

  std::set<int> ids;
  for (auto const& e : d.edges_) {
    if (!ids.insert(e.id).second) {
      malformed("duplicate edge id " + std::to_string(e.id));
    }
  }
  if (d.edges_.empty()) {
    malformed("a diagram needs at least one edge");
  }
  ids.clear();
  for (std::size_t f = 0; f < d.faces_.size(); ++f) {
    auto const& face = d.faces_[f];
    if (!ids.insert(face.id).second) {
      malformed("duplicate face id " + std::to_string(face.id));
    }
    if (face.exterior) {
      if (d.exterior_ >= 0) {
        malformed("more than one exterior face");
      }
      d.exterior_ = static_cast<int>(f);
    }
    if (face.edges.empty() || face.corners.size() != face.edges.size()) {
      malformed("face " + std::to_string(face.id) + " must alternate corners and edges");
    }
    for (auto const& c : face.corners) {
      if (!c.alphabet()->same_structure(*d.alphabet_)) {
        malformed("corner label of face " + std::to_string(face.id) + " is over the wrong alphabet");
      }
    }
  }
  if (d.exterior_ < 0) {
    malformed("no exterior face");
  }

  std::size_t const ne = d.edges_.size();
  CornerRef const   none{-1, -1};
  d.forward_.assign(ne, none);
  d.backward_.assign(ne, none);
  for (std::size_t f = 0; f < d.faces_.size(); ++f) {
    auto const& face = d.faces_[f];
    for (std::size_t i = 0; i < face.edges.size(); ++i) {
      auto const& tr = face.edges[i];
      if (tr.edge < 0 || static_cast<std::size_t>(tr.edge) >= ne || (tr.sign != 1 && tr.sign != -1)) {
        malformed("face " + std::to_string(face.id) + " has an invalid edge traversal");
      }
      auto& slot = tr.sign > 0 ? d.forward_[tr.edge] : d.backward_[tr.edge];
      if (slot != none) {
        malformed("edge " + std::to_string(d.edges_[tr.edge].id) + " is traversed twice in the same direction");
      }
      slot = {static_cast<int>(f), static_cast<int>(i)};
    }
  }
  for (std::size_t e = 0; e < ne; ++e) {
    if (d.forward_[e] == none || d.backward_[e] == none) {
      malformed("edge " + std::to_string(d.edges_[e].id) + " is not traversed once in each direction");
    }
  }

  // Vertex of every corner, checked against both flanking edges.
  std::map<int, int> vertex_index;
  d.corner_vertex_.resize(d.faces_.size());
  for (std::size_t f = 0; f < d.faces_.size(); ++f) {
    auto const& face = d.faces_[f];
    d.corner_vertex_[f].resize(face.edges.size());
    for (std::size_t i = 0; i < face.edges.size(); ++i) {
      auto const& next = face.edges[i];
      auto const& prev = face.edges[prev_pos(face, static_cast<int>(i))];
      auto const& en   = d.edges_[next.edge];
      auto const& ep   = d.edges_[prev.edge];
      int         from = next.sign > 0 ? en.tail : en.head;
      int         to   = prev.sign > 0 ? ep.head : ep.tail;
      if (from != to) {
        malformed("face " + std::to_string(face.id) + " boundary is not a closed walk at corner " +
                  std::to_string(i));
      }
      vertex_index.emplace(from, 0);
      d.corner_vertex_[f][i] = from;
    }
  }
  for (auto const& e : d.edges_) {
    if (!vertex_index.count(e.tail) || !vertex_index.count(e.head)) {
      malformed("edge " + std::to_string(e.id) + " has an endpoint with no corner");
    }
  }
  int next_index = 0;
  for (auto& [id, index] : vertex_index) {
    index = next_index++;
    d.vertex_ids_.push_back(id);
  }
  for (auto& row : d.corner_vertex_) {
    for (auto& v : row) {
      v = vertex_index.at(v);
    }
  }

  // Each vertex must be a single rotation orbit.
  d.vertices_.resize(d.vertex_ids_.size());
  std::set<CornerRef> seen;
  for (std::size_t f = 0; f < d.faces_.size(); ++f) {
    for (std::size_t i = 0; i < d.faces_[f].edges.size(); ++i) {
      CornerRef start{static_cast<int>(f), static_cast<int>(i)};
      if (seen.count(start)) {
        continue;
      }
      int v = d.vertex_of(start);
      if (!d.vertices_[v].empty()) {
        malformed("vertex " + std::to_string(d.vertex_ids_[v]) + " is pinched: its corners form several cycles");
      }
      for (CornerRef c = start;;) {
        seen.insert(c);
        d.vertices_[v].push_back(c);
        c = d.succ(c);
        if (c == start) {
          break;
        }
      }
    }
  }

  // Connected: faces reachable from the exterior through shared edges.
  std::vector<bool> reached(d.faces_.size(), false);
  std::vector<int>  stack{d.exterior_};
  reached[d.exterior_] = true;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (auto const& tr : d.faces_[f].edges) {
      int g = d.traversal(tr.edge, -tr.sign).face;
      if (!reached[g]) {
        reached[g] = true;
        stack.push_back(g);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    malformed("the map is not connected");
  }
  if (d.euler_characteristic() != 2) {
    malformed("V - E + F = " + std::to_string(d.euler_characteristic()) + ", not a sphere");
  }
  return d;
}

CornerRef Diagram::succ(CornerRef c) const {
  auto const& tr  = faces_[c.face].edges[c.pos];
  auto        opp = traversal(tr.edge, -tr.sign);
  int         n   = static_cast<int>(faces_[opp.face].edges.size());
  return {opp.face, (opp.pos + 1) % n};
}

int Diagram::edge_index(int id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) {
      return static_cast<int>(e);
    }
  }
  malformed("no edge with id " + std::to_string(id));
}

int Diagram::face_index(int id) const {
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (faces_[f].id == id) {
      return static_cast<int>(f);
    }
  }
  malformed("no face with id " + std::to_string(id));
}

FPElement vertex_label(Diagram const& d, int v) {
  auto label = FPElement::identity(d.alphabet());
  for (auto const& c : d.vertex_corners(v)) {
    label = label * d.corner_label(c);
  }
  return label;
}

TWord face_word_from_edge(Diagram const& d, int f, int pos) {
  auto const&           face = d.faces()[f];
  int const             n    = static_cast<int>(face.edges.size());
  std::vector<WordItem> raw;
  for (int j = 0; j < n; ++j) {
    int i = (pos + j) % n;
    raw.emplace_back(face.edges[i].sign > 0 ? TLetter::kPos : TLetter::kNeg);
    raw.emplace_back(face.corners[(i + 1) % n]);
  }
  return tword_reduce(d.alphabet(), raw);
}

TWord face_word(Diagram const& d, int f) {
  auto const&           face = d.faces()[f];
  std::vector<WordItem> raw;
  for (std::size_t i = 0; i < face.edges.size(); ++i) {
    raw.emplace_back(face.corners[i]);
    raw.emplace_back(face.edges[i].sign > 0 ? TLetter::kPos : TLetter::kNeg);
  }
  return tword_reduce(d.alphabet(), raw);
}

TWord face_label(Diagram const& d, int f) {
  return conjugacy_normal_form(face_word(d, f));
}

CellCycle cell_cycle(TWord const& w) {
  auto const&      L = w.letters();
  std::vector<int> tp;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (Alphabet::is_t(L[i])) {
      tp.push_back(static_cast<int>(i));
    }
  }
  if (tp.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a cell label needs a t-letter");
  }
  auto const&         A = w.alphabet();
  CellCycle           out;
  std::vector<Letter> wrap(L.begin() + tp.back() + 1, L.end());
  wrap.insert(wrap.end(), L.begin(), L.begin() + tp.front());
  out.corners.push_back(FPElement::from_letters(A, wrap));
  for (std::size_t j = 0; j < tp.size(); ++j) {
    out.signs.push_back(Alphabet::t_sign(L[tp[j]]));
    if (j + 1 < tp.size()) {
      out.corners.push_back(
          FPElement::from_letters(A, std::vector<Letter>(L.begin() + tp[j] + 1, L.begin() + tp[j + 1])));
    }
  }
  return out;
}

CellCycle inverse_cycle(CellCycle const& cycle) {
  std::size_t const n = cycle.size();
  CellCycle         out;
  for (std::size_t j = 0; j < n; ++j) {
    out.corners.push_back(cycle.corners[(n - j) % n].inverse());
    out.signs.push_back(-cycle.signs[n - 1 - j]);
  }
  return out;
}

RelatorCells RelatorCells::from(NormalizedPresentation const& np) {
  return {np.alphabet, cell_cycle(np.v), np.k, np.m, true, np.s};
}

RelatorCells RelatorCells::from(RelatorPresentation const& p) {
  return {p.alphabet(), cell_cycle(p.w()), p.k(), -1, false, 0};
}

namespace {

// Least r with face position j matching cycle index (j + r) mod period.
std::optional<int> match_rotation(FaceSpec const& face, CellCycle const& cycle) {
  int const n      = static_cast<int>(face.edges.size());
  int const period = static_cast<int>(cycle.size());
  if (period == 0 || n % period != 0) {
    return std::nullopt;
  }
  for (int r = 0; r < period; ++r) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      int q = (j + r) % period;
      ok    = face.edges[j].sign == cycle.signs[q] && face.corners[j] == cycle.corners[q];
    }
    if (ok) {
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

FaceClass classify_face(Diagram const& d, int f, RelatorCells const& cells) {
  FaceClass   out;
  auto const& face = d.faces()[f];
  if (face.exterior) {
    out.kind = FaceKind::kExterior;
    return out;
  }
  int const n = static_cast<int>(face.edges.size());
  if (n == 2 && cells.phi_cells) {
    for (int r = 0; r < 2; ++r) {
      if (face.edges[r].sign != 1 || face.edges[1 - r].sign != -1) {
        continue;
      }
      auto const& p = face.corners[r];
      if (p.is_identity() || !membership_in_P(p, Side::kP, cells.s)) {
        out.note = "phi-cell label p is not in P \\ {1}";
        return out;
      }
      if (face.corners[1 - r] != phi_apply(p, Direction::kForward, cells.s).inverse()) {
        out.note = "phi-cell corners are not p and (p^phi)^-1";
        return out;
      }
      out.kind   = FaceKind::kPhiCell;
      out.p      = p;
      out.offset = r;
      return out;
    }
  }
  int const period = static_cast<int>(cells.period.size());
  if (n == cells.k * period) {
    if (auto r = match_rotation(face, cells.period)) {
      out.kind   = FaceKind::kKCell;
      out.sign   = 1;
      out.offset = (period - *r) % period;
      return out;
    }
    if (auto r = match_rotation(face, inverse_cycle(cells.period))) {
      out.kind   = FaceKind::kKCell;
      out.sign   = -1;
      out.offset = (period - *r) % period;
      return out;
    }
  }
  out.note = "label is neither a phi-relator nor a rotation of v^{+-k}";
  return out;
}

std::vector<ReduciblePair> find_reducible_pairs(Diagram const& d) {
  std::vector<ReduciblePair> out;
  for (int e = 0; e < d.edge_count(); ++e) {
    auto fa = d.traversal(e, 1);
    auto fb = d.traversal(e, -1);
    if (fa.face == fb.face || fa.face == d.exterior() || fb.face == d.exterior()) {
      continue;
    }
    // Both labels read from the edge, with the shared t-letter dropped.
    auto t  = TWord::t(d.alphabet());
    auto ra = t.inverse() * face_word_from_edge(d, fa.face, fa.pos);
    auto rb = t * face_word_from_edge(d, fb.face, fb.pos);
    if ((ra * rb).is_identity()) {
      out.push_back({e, fa.face, fb.face});
    }
  }
  return out;
}

namespace {

std::vector<int> shared_phi_edges(Diagram const& d, std::vector<FaceClass> const& classes) {
  std::vector<int> out;
  for (int e = 0; e < d.edge_count(); ++e) {
    int fa = d.traversal(e, 1).face;
    int fb = d.traversal(e, -1).face;
    if (fa != fb && classes[fa].kind == FaceKind::kPhiCell && classes[fb].kind == FaceKind::kPhiCell) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

bool ValidationReport::valid() const {
  return euler == 2 && std::all_of(vertex_ok.begin(), vertex_ok.end(), [](bool b) { return b; })
      && std::none_of(face_class.begin(), face_class.end(),
                      [](FaceClass const& c) { return c.kind == FaceKind::kUnknown; });
}

int ValidationReport::phi_cell_count() const {
  return static_cast<int>(std::count_if(face_class.begin(), face_class.end(),
                                        [](FaceClass const& c) { return c.kind == FaceKind::kPhiCell; }));
}

int ValidationReport::k_cell_count() const {
  return static_cast<int>(std::count_if(face_class.begin(), face_class.end(),
                                        [](FaceClass const& c) { return c.kind == FaceKind::kKCell; }));
}

ValidationReport validate(Diagram const& d, RelatorCells const& cells) {
  ValidationReport r;
  r.vertices = d.vertex_count();
  r.edges    = d.edge_count();
  r.faces    = d.face_count();
  r.euler    = d.euler_characteristic();
  for (int v = 0; v < d.vertex_count(); ++v) {
    r.vertex_ok.push_back(vertex_label(d, v).is_identity());
  }
  for (int f = 0; f < d.face_count(); ++f) {
    r.face_class.push_back(classify_face(d, f, cells));
  }
  r.reducible_pairs  = find_reducible_pairs(d);
  r.shared_phi_edges = shared_phi_edges(d, r.face_class);
  r.phi_reduced      = r.reducible_pairs.empty() && r.shared_phi_edges.empty();
  return r;
}

ValidationReport validate(Diagram const& d, NormalizedPresentation const& np) {
  return validate(d, RelatorCells::from(np));
}

bool is_phi_reduced(Diagram const& d, RelatorCells const& cells) {
  if (!find_reducible_pairs(d).empty()) {
    return false;
  }
  std::vector<FaceClass> classes;
  for (int f = 0; f < d.face_count(); ++f) {
    classes.push_back(classify_face(d, f, cells));
  }
  return shared_phi_edges(d, classes).empty();
}

char const* to_string(CornerType type) noexcept {
  switch (type) {
    case CornerType::kPlusPlus: return "++";
    case CornerType::kMinusMinus: return "--";
    case CornerType::kPlusMinus: return "+-";
    case CornerType::kMinusPlus: return "-+";
  }
  return "?";
}

char const* to_string(VertexKind kind) noexcept {
  switch (kind) {
    case VertexKind::kSink: return "sink";
    case VertexKind::kSource: return "source";
    case VertexKind::kMixed: return "mixed";
  }
  return "?";
}

CornerType corner_type(Diagram const& d, CornerRef c) {
  auto const& face = d.faces()[c.face];
  int         prev = face.edges[prev_pos(face, c.pos)].sign;
  int         next = face.edges[c.pos].sign;
  if (prev > 0) {
    return next > 0 ? CornerType::kPlusPlus : CornerType::kPlusMinus;
  }
  return next > 0 ? CornerType::kMinusPlus : CornerType::kMinusMinus;
}

VertexKind classify_vertex(Diagram const& d, int v) {
  auto const& corners = d.vertex_corners(v);
  auto        all     = [&](CornerType t) {
    return std::all_of(corners.begin(), corners.end(), [&](CornerRef c) { return corner_type(d, c) == t; });
  };
  if (all(CornerType::kPlusMinus)) {
    return VertexKind::kSink;
  }
  if (all(CornerType::kMinusPlus)) {
    return VertexKind::kSource;
  }
  return VertexKind::kMixed;
}

bool alternation_holds(Diagram const& d, int v) {
  std::vector<CornerType> stops;
  for (auto c : d.vertex_corners(v)) {
    auto t = corner_type(d, c);
    if (t == CornerType::kPlusPlus || t == CornerType::kMinusMinus) {
      stops.push_back(t);
    }
  }
  if (stops.empty()) {
    return classify_vertex(d, v) != VertexKind::kMixed;
  }
  for (std::size_t i = 0; i < stops.size(); ++i) {
    if (stops[i] == stops[(i + 1) % stops.size()]) {
      return false;
    }
  }
  return true;
}

namespace {

bool has_both_stop_subwords(TWord const& w) {
  bool plus = false, minus = false;
  int  last = 0;
  for (Letter x : w.letters()) {
    if (!Alphabet::is_t(x)) {
      continue;
    }
    int sign = Alphabet::t_sign(x);
    plus  = plus || (last == 1 && sign == 1);
    minus = minus || (last == -1 && sign == -1);
    last  = sign;
  }
  return plus && minus;
}

}  // namespace

std::pair<TWord, int> ensure_exterior_corners(TWord const& u, int m) {
  if (m == 0) {
    return {u, 0};
  }
  auto t = TWord::t(u.alphabet());
  auto x = u;
  for (int n = 0; n <= static_cast<int>(u.length()); ++n) {
    if (has_both_stop_subwords(x)) {
      return {x, n};
    }
    x = t.inverse() * x * t;
  }
  throw Error(ErrorCode::kNoSuchConjugate,
              "no t^-n u t^n with n <= |u| has both a t g t and a t^-1 g t^-1 subword");
}

}  // namespace relhyp
