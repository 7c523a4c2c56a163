#include "relhyp/construct.hpp"

#include <algorithm>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

template <class T>
void rotate_left(std::vector<T>& v, int pos) {
  std::rotate(v.begin(), v.begin() + pos, v.end());
}

TWord word_from(AlphabetPtr const& alphabet, FaceSpec const& face, int pos) {
  int const             n = static_cast<int>(face.edges.size());
  std::vector<WordItem> raw;
  for (int j = 0; j < n; ++j) {
    int i = (pos + j) % n;
    raw.emplace_back(face.edges[i].sign > 0 ? TLetter::kPos : TLetter::kNeg);
    raw.emplace_back(face.corners[(i + 1) % n]);
  }
  return tword_reduce(alphabet, raw);
}

}  // namespace

DiskBuilder::DiskBuilder(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

int DiskBuilder::new_edge(int from, int to, int sign) {
  int id = static_cast<int>(edges_.size());
  edges_.push_back(sign > 0 ? EdgeSpec{id, from, to} : EdgeSpec{id, to, from});
  return id;
}

int DiskBuilder::start_vertex(Traversal tr) const {
  auto const& e = edges_[tr.edge];
  return tr.sign > 0 ? e.tail : e.head;
}

void DiskBuilder::rotate_exterior(int pos) {
  auto& ext = faces_.back();
  rotate_left(ext.edges, pos);
  rotate_left(ext.corners, pos);
}

void DiskBuilder::start(CellCycle const& cell) {
  if (!faces_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "builder already started");
  }
  int const        n = static_cast<int>(cell.size());
  std::vector<int> v(n);
  for (auto& x : v) {
    x = new_vertex();
  }
  FaceSpec face{0, false, cell.corners, {}};
  for (int j = 0; j < n; ++j) {
    face.edges.push_back({new_edge(v[j], v[(j + 1) % n], cell.signs[j]), cell.signs[j]});
  }
  FaceSpec ext{1, true, {}, {}};
  for (int j = n - 1; j >= 0; --j) {
    ext.edges.push_back({face.edges[j].edge, -face.edges[j].sign});
    ext.corners.push_back(FPElement::identity(alphabet_));
  }
  faces_.push_back(std::move(face));
  faces_.push_back(std::move(ext));
}

void DiskBuilder::glue(int pos, int length, CellCycle const& cell, int r) {
  int const n    = static_cast<int>(cell.size());
  int const size = exterior_size();
  if (length < 1 || length >= n || length >= size) {
    throw Error(ErrorCode::kInvalidArgument, "gluing arc must be shorter than both boundaries");
  }
  rotate_exterior(pos);
  auto ext = faces_.back();
  for (int j = 0; j < length; ++j) {
    if (cell.signs[(r + j) % n] != ext.edges[j].sign) {
      throw Error(ErrorCode::kInvalidArgument, "cell edge signs do not match the gluing arc");
    }
  }
  int const s = start_vertex(ext.edges[0]);
  int const e = start_vertex(ext.edges[length]);

  FaceSpec face{static_cast<int>(faces_.size()) - 1, false, {}, {}};
  for (int j = 0; j < n; ++j) {
    face.corners.push_back(cell.corners[(r + j) % n]);
  }
  for (int j = 0; j < length; ++j) {
    face.edges.push_back(ext.edges[j]);
  }
  for (int j = length, cur = e; j < n; ++j) {
    int sign = cell.signs[(r + j) % n];
    int to   = j == n - 1 ? s : new_vertex();
    face.edges.push_back({new_edge(cur, to, sign), sign});
    cur = to;
  }

  FaceSpec out{0, true, {ext.corners[0]}, {}};
  for (int j = n - 1; j >= length; --j) {
    out.edges.push_back({face.edges[j].edge, -face.edges[j].sign});
    if (j > length) {
      out.corners.push_back(FPElement::identity(alphabet_));
    }
  }
  out.edges.insert(out.edges.end(), ext.edges.begin() + length, ext.edges.end());
  out.corners.insert(out.corners.end(), ext.corners.begin() + length, ext.corners.end());

  faces_.back() = std::move(face);
  faces_.push_back(std::move(out));
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    faces_[f].id = static_cast<int>(f);
  }
}

void DiskBuilder::attach_spike(int pos, int length) {
  if (length < 1) {
    throw Error(ErrorCode::kInvalidArgument, "spike length must be positive");
  }
  rotate_exterior(pos);
  auto&                  ext = faces_.back();
  int                    x   = start_vertex(ext.edges[0]);
  std::vector<Traversal> out_edges, back_edges;
  for (int j = 0, cur = x; j < length; ++j) {
    int y = new_vertex();
    out_edges.push_back({new_edge(cur, y, 1), 1});
    cur = y;
  }
  for (int j = length - 1; j >= 0; --j) {
    back_edges.push_back({out_edges[j].edge, -1});
  }
  std::vector<Traversal> edges = out_edges;
  edges.insert(edges.end(), back_edges.begin(), back_edges.end());
  edges.insert(edges.end(), ext.edges.begin(), ext.edges.end());
  std::vector<FPElement> corners{ext.corners[0]};
  corners.insert(corners.end(), 2 * length, FPElement::identity(alphabet_));
  corners.insert(corners.end(), ext.corners.begin() + 1, ext.corners.end());
  ext.edges   = std::move(edges);
  ext.corners = std::move(corners);
}

int DiskBuilder::face_across(int pos) const {
  auto const& tr = faces_.back().edges[pos];
  for (std::size_t f = 0; f + 1 < faces_.size(); ++f) {
    for (auto const& x : faces_[f].edges) {
      if (x.edge == tr.edge && x.sign == -tr.sign) {
        return static_cast<int>(f);
      }
    }
  }
  return -1;
}

bool DiskBuilder::edge_is_reducible(int edge) const {
  int fa = -1, pa = -1, fb = -1, pb = -1;
  for (std::size_t f = 0; f + 1 < faces_.size(); ++f) {
    auto const& face = faces_[f];
    for (std::size_t i = 0; i < face.edges.size(); ++i) {
      if (face.edges[i].edge != edge) {
        continue;
      }
      if (face.edges[i].sign > 0) {
        fa = static_cast<int>(f), pa = static_cast<int>(i);
      } else {
        fb = static_cast<int>(f), pb = static_cast<int>(i);
      }
    }
  }
  if (fa < 0 || fb < 0 || fa == fb) {
    return false;
  }
  auto t = TWord::t(alphabet_);
  return (t.inverse() * word_from(alphabet_, faces_[fa], pa) * t * word_from(alphabet_, faces_[fb], pb))
      .is_identity();
}

Diagram DiskBuilder::build() const {
  return fix_exterior_corners(Diagram::make(alphabet_, edges_, faces_));
}

Diagram fix_exterior_corners(Diagram const& d) {
  auto faces = d.faces();
  for (int v = 0; v < d.vertex_count(); ++v) {
    auto corners = d.vertex_corners(v);
    auto first   = std::find_if(corners.begin(), corners.end(),
                                [&](CornerRef c) { return c.face == d.exterior(); });
    if (first == corners.end()) {
      continue;
    }
    std::rotate(corners.begin(), first, corners.end());
    auto rest = FPElement::identity(d.alphabet());
    for (std::size_t i = 1; i < corners.size(); ++i) {
      auto c = corners[i];
      if (c.face == d.exterior()) {
        faces[c.face].corners[c.pos] = FPElement::identity(d.alphabet());
      } else {
        rest = rest * d.corner_label(c);
      }
    }
    faces[corners[0].face].corners[corners[0].pos] = rest.inverse();
  }
  return Diagram::make(d.alphabet(), d.edges(), std::move(faces));
}

CellCycle phi_cell(RelatorCells const& cells, FPElement const& p) {
  if (!cells.phi_cells || p.is_identity() || !membership_in_P(p, Side::kP, cells.s)) {
    throw Error(ErrorCode::kNotInDomain, "phi-cells need p in P \\ {1}");
  }
  return {{p, phi_apply(p, Direction::kForward, cells.s).inverse()}, {1, -1}};
}

CellCycle k_cell(RelatorCells const& cells, int sign) {
  auto      one = sign > 0 ? cells.period : inverse_cycle(cells.period);
  CellCycle out;
  for (int i = 0; i < cells.k; ++i) {
    out.corners.insert(out.corners.end(), one.corners.begin(), one.corners.end());
    out.signs.insert(out.signs.end(), one.signs.begin(), one.signs.end());
  }
  return out;
}

Diagram phi_bigon(RelatorCells const& cells, FPElement const& p) {
  DiskBuilder b(cells.alphabet);
  b.start(phi_cell(cells, p));
  return b.build();
}

Diagram kcell_disk(RelatorCells const& cells, int sign) {
  DiskBuilder b(cells.alphabet);
  b.start(k_cell(cells, sign));
  return b.build();
}

Diagram mirror_pair(RelatorCells const& cells) {
  auto cell = k_cell(cells, 1);
  int  n    = static_cast<int>(cell.size());
  int  P    = static_cast<int>(cells.period.size());
  DiskBuilder b(cells.alphabet);
  b.start(cell);
  // The exterior walks the cell's traversal j at position n - 1 - j; the
  // corner b_0 sits between traversals 0 and 1.
  b.glue(n - 2, 2, k_cell(cells, -1), P - 2);
  return b.build();
}

Diagram phi_pair(RelatorCells const& cells, FPElement const& p, FPElement const& q) {
  DiskBuilder b(cells.alphabet);
  b.start(phi_cell(cells, p));
  b.glue(0, 1, phi_cell(cells, q), 0);
  return b.build();
}

bool exterior_has_stop_corners(Diagram const& d) {
  bool plus = false, minus = false;
  int  n    = static_cast<int>(d.faces()[d.exterior()].edges.size());
  for (int i = 0; i < n; ++i) {
    auto t = corner_type(d, {d.exterior(), i});
    plus   = plus || t == CornerType::kPlusPlus;
    minus  = minus || t == CornerType::kMinusMinus;
  }
  return plus && minus;
}

Diagram random_diagram(std::mt19937& rng, RelatorCells const& cells, RandomDiagramOptions const& options) {
  auto const& A         = cells.alphabet;
  bool const  allow_phi = cells.phi_cells && cells.s > 0 && options.phi_share > 0;
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution phi_coin(allow_phi ? options.phi_share : 0.0);

  auto random_p = [&] {
    std::uniform_int_distribution<int> len(1, 3), factor(0, cells.s - 1),
        gen(0, A->base().rank() - 1);
    for (;;) {
      std::vector<Letter> letters;
      for (int i = len(rng); i > 0; --i) {
        letters.push_back(A->base_letter(factor(rng), gen(rng),
                                         A->base().kind() != BaseKind::kFiniteCyclic && coin(rng)));
      }
      auto p = FPElement::from_letters(A, letters);
      if (!p.is_identity()) {
        return p;
      }
    }
  };
  auto random_cell = [&](bool& is_phi) {
    is_phi = phi_coin(rng);
    return is_phi ? phi_cell(cells, random_p()) : k_cell(cells, coin(rng) ? 1 : -1);
  };

  DiskBuilder       b(A);
  std::vector<bool> phi_face;
  bool              is_phi = false;
  b.start(random_cell(is_phi));
  phi_face.push_back(is_phi);
  while (b.face_count() - 1 < options.faces) {
    int  pos  = std::uniform_int_distribution<int>(0, b.exterior_size() - 1)(rng);
    auto cell = random_cell(is_phi);
    std::vector<int> rotations;
    for (int r = 0; r < static_cast<int>(cell.size()); ++r) {
      if (cell.signs[r] == b.exterior_sign(pos)) {
        rotations.push_back(r);
      }
    }
    if (rotations.empty()) {
      continue;
    }
    int r      = rotations[std::uniform_int_distribution<std::size_t>(0, rotations.size() - 1)(rng)];
    int across = b.face_across(pos);
    if (options.phi_reduced && is_phi && across >= 0 && phi_face[across]) {
      continue;
    }
    auto saved = b;
    int  edge  = b.exterior_edge(pos);
    b.glue(pos, 1, cell, r);
    if (options.phi_reduced && b.edge_is_reducible(edge)) {
      b = std::move(saved);
      continue;
    }
    phi_face.push_back(is_phi);
  }
  auto d = b.build();
  if (cells.m > 0 && options.spike > 0 && !exterior_has_stop_corners(d)) {
    b.attach_spike(0, options.spike);
    d = b.build();
  }
  return d;
}

}  // namespace relhyp
