#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "relhyp/construct.hpp"
#include "relhyp/diagram.hpp"
#include "relhyp/diagram_io.hpp"
#include "relhyp/error.hpp"

using namespace relhyp;
using namespace relhyp::testing;

namespace {

FPElement E(AlphabetPtr const& alphabet, char const* text) {
  return parse_element(alphabet, text);
}

ErrorCode parse_error(char const* text, AlphabetPtr const& alphabet) {
  try {
    parse_diagram(text, alphabet);
  } catch (Error const& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("cell cycles") {
  auto np = normalized(kWordS1M1, 2);
  auto cy = cell_cycle(np.v);
  REQUIRE(cy.size() == 5);
  CHECK(cy.corners[0] == np.c);
  CHECK(cy.corners[1] == np.b[0]);
  CHECK(cy.corners[2] == np.a[0]);
  CHECK(cy.corners[3] == np.b[1]);
  CHECK(cy.corners[4] == np.a[1]);
  CHECK(cy.signs == std::vector<int>{1, -1, 1, -1, 1});
  auto inv = inverse_cycle(cy);
  // Reading the inverse cycle gives v^-1 up to rotation.
  std::vector<WordItem> raw;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    raw.emplace_back(inv.corners[i]);
    raw.emplace_back(inv.signs[i] > 0 ? TLetter::kPos : TLetter::kNeg);
  }
  CHECK(is_conjugate(tword_reduce(np.alphabet, raw), np.v.inverse()));
  CHECK(inverse_cycle(inv).corners == cy.corners);
  CHECK(inverse_cycle(inv).signs == cy.signs);
}

TEST_CASE("phi bigon") {
  auto np    = normalized(kWordS1M1, 2);
  auto cells = RelatorCells::from(np);
  auto p     = E(np.alphabet, "a@0.b@0");
  auto d     = phi_bigon(cells, p);
  CHECK(d.vertex_count() == 2);
  CHECK(d.edge_count() == 2);
  CHECK(d.face_count() == 2);
  CHECK(d.euler_characteristic() == 2);
  auto report = validate(d, np);
  CHECK(report.valid());
  CHECK(report.phi_cell_count() == 1);
  CHECK(report.k_cell_count() == 0);
  CHECK(report.phi_reduced);
  int interior = 1 - d.exterior();
  REQUIRE(report.face_class[interior].p);
  CHECK(*report.face_class[interior].p == p);
  CHECK(face_label(d, interior) == conjugacy_normal_form(np.phi_relator(p)));
  for (int v = 0; v < d.vertex_count(); ++v) {
    CHECK(vertex_label(d, v).is_identity());
    CHECK(alternation_holds(d, v));
  }
  // The corner p^-phi has both edges pointing in.
  auto const& face = d.faces()[interior];
  for (int i = 0; i < 2; ++i) {
    auto t = corner_type(d, {interior, i});
    if (face.corners[i] == p) {
      CHECK(t == CornerType::kMinusPlus);
    } else {
      CHECK(t == CornerType::kPlusMinus);
    }
  }
  CHECK(find_reducible_pairs(d).empty());

  // p outside P is refused both by the constructor and by the validator.
  CHECK_THROWS_AS(phi_bigon(cells, E(np.alphabet, "a@1")), Error);
  CHECK_THROWS_AS(phi_bigon(cells, FPElement::identity(np.alphabet)), Error);
}

TEST_CASE("k-cell disks") {
  for (auto w : {kWordS1M1, kWordS1M0, kWordS0M1}) {
    auto np    = normalized(w, 3);
    auto cells = RelatorCells::from(np);
    for (int sign : {1, -1}) {
      auto d      = kcell_disk(cells, sign);
      auto report = validate(d, np);
      CHECK(report.valid());
      CHECK(report.k_cell_count() == 1);
      int interior = 1 - d.exterior();
      CHECK(report.face_class[interior].sign == sign);
      CHECK(face_label(d, interior) == conjugacy_normal_form(sign > 0 ? np.relator() : np.relator().inverse()));
      CHECK(find_reducible_pairs(d).empty());
      CHECK(is_phi_reduced(d, cells));
      for (int v = 0; v < d.vertex_count(); ++v) {
        CHECK(alternation_holds(d, v));
      }
      // The exterior reads the inverse label.
      CHECK(is_conjugate(face_word(d, d.exterior()), face_word(d, interior).inverse()));
    }
  }
}

TEST_CASE("k-cell corner at c sits at the recorded offset") {
  auto np    = normalized(kWordS1M1, 2);
  auto cells = RelatorCells::from(np);
  DiskBuilder b(np.alphabet);
  auto        cell = k_cell(cells, 1);
  // Rotate the cell so that face position 0 holds a_0.
  CellCycle rotated;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    rotated.corners.push_back(cell.corners[(i + 2) % cell.size()]);
    rotated.signs.push_back(cell.signs[(i + 2) % cell.size()]);
  }
  b.start(rotated);
  auto d  = b.build();
  auto fc = classify_face(d, 0, cells);
  CHECK(fc.kind == FaceKind::kKCell);
  CHECK(d.faces()[0].corners[fc.offset] == np.c);
  CHECK(d.faces()[0].corners[(fc.offset + 1) % cell.size()] == np.b[0]);
}

TEST_CASE("mirror pair is reducible and its shared vertex is an interior sink") {
  auto np    = normalized(kWordS1M1, 2);
  auto cells = RelatorCells::from(np);
  auto d     = mirror_pair(cells);
  auto r     = validate(d, np);
  CHECK(r.valid());
  CHECK(r.k_cell_count() == 2);
  CHECK_FALSE(r.reducible_pairs.empty());
  CHECK_FALSE(r.phi_reduced);
  int interior_vertices = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    bool on_exterior = false;
    for (auto c : d.vertex_corners(v)) {
      on_exterior = on_exterior || c.face == d.exterior();
    }
    if (!on_exterior) {
      ++interior_vertices;
      CHECK(classify_vertex(d, v) == VertexKind::kSink);
    }
  }
  CHECK(interior_vertices == 1);
}

TEST_CASE("two phi-cells sharing an edge are not phi-reduced") {
  auto np    = normalized(kWordS1M1, 2);
  auto cells = RelatorCells::from(np);
  auto d     = phi_pair(cells, E(np.alphabet, "a@0"), E(np.alphabet, "b@0"));
  auto r     = validate(d, np);
  CHECK(r.valid());
  CHECK(r.reducible_pairs.empty());
  CHECK(r.shared_phi_edges.size() == 1);
  CHECK_FALSE(r.phi_reduced);
  CHECK_FALSE(is_phi_reduced(d, cells));
}

TEST_CASE("phi-cells touching only k-cells keep the diagram phi-reduced") {
  auto        np    = normalized(kWordS1M1, 2);
  auto        cells = RelatorCells::from(np);
  DiskBuilder b(np.alphabet);
  b.start(k_cell(cells, 1));
  // Hang a phi-cell on every other exterior edge whose sign allows it.
  int placed = 0;
  for (int pos = 0; pos < b.exterior_size() && placed < 3; pos += 2) {
    int sign = b.exterior_sign(pos);
    b.glue(pos, 1, phi_cell(cells, E(np.alphabet, "a@0")), sign > 0 ? 0 : 1);
    ++placed;
  }
  auto d = b.build();
  auto r = validate(d, np);
  CHECK(r.valid());
  CHECK(r.phi_cell_count() == 3);
  CHECK(r.phi_reduced);
}

TEST_CASE("vertex labels") {
  auto np    = normalized(kWordS1M1, 2);
  auto cells = RelatorCells::from(np);
  auto d     = kcell_disk(cells, 1);
  for (int v = 0; v < d.vertex_count(); ++v) {
    CHECK(vertex_label(d, v).is_identity());
    CHECK(d.vertex_corners(v).size() == 2);
  }
  // Perturbing one corner breaks exactly one vertex.
  auto faces               = d.faces();
  faces[0].corners[0]      = faces[0].corners[0] * E(np.alphabet, "a@1");
  auto bad                 = Diagram::make(d.alphabet(), d.edges(), faces);
  auto r                   = validate(bad, np);
  int  broken              = 0;
  for (bool ok : r.vertex_ok) {
    broken += !ok;
  }
  CHECK(broken == 1);
  CHECK_FALSE(r.valid());
}

TEST_CASE("structural rules") {
  auto A = Alphabet::make(BaseGroup::free({"a"}), 0);
  // One edge walked twice forward.
  CHECK(parse_error(R"({"edges": [{"id": 1, "tail": 0, "head": 0}],
    "faces": [{"id": 0, "exterior": true, "boundary": [{"corner": "1"}, {"edge": 1, "dir": "+"}]},
              {"id": 1, "exterior": false, "boundary": [{"corner": "1"}, {"edge": 1, "dir": "+"}]}]})",
                    A) == ErrorCode::kMalformedDiagram);
  // A torus: one vertex, two loops, one face.
  CHECK(parse_error(R"({"edges": [{"id": 1, "tail": 0, "head": 0}, {"id": 2, "tail": 0, "head": 0}],
    "faces": [{"id": 0, "exterior": true, "boundary": [{"corner": "1"}, {"edge": 1, "dir": "+"},
      {"corner": "1"}, {"edge": 2, "dir": "+"}, {"corner": "1"}, {"edge": 1, "dir": "-"},
      {"corner": "1"}, {"edge": 2, "dir": "-"}]}]})",
                    A) == ErrorCode::kMalformedDiagram);
  // No exterior face.
  CHECK(parse_error(R"({"edges": [{"id": 1, "tail": 0, "head": 1}],
    "faces": [{"id": 0, "exterior": false, "boundary": [{"corner": "1"}, {"edge": 1, "dir": "+"},
      {"corner": "1"}, {"edge": 1, "dir": "-"}]}]})",
                    A) == ErrorCode::kMalformedDiagram);
  CHECK(parse_error(R"({"edges": []})", A) == ErrorCode::kParse);
  CHECK(parse_error(R"({"edges": [{"id": 1, "tail": 0, "head": 1}],
    "faces": [{"id": 0, "exterior": true, "boundary": [{"corner": "1"}, {"edge": 1, "dir": "x"}]}]})",
                    A) == ErrorCode::kParse);
  // A single edge with both sides on the exterior is a valid sphere map.
  auto d = parse_diagram(R"({"edges": [{"id": 1, "tail": 0, "head": 1}],
    "faces": [{"id": 0, "exterior": true, "boundary": [{"corner": "1"}, {"edge": 1, "dir": "+"},
      {"corner": "1"}, {"edge": 1, "dir": "-"}]}]})",
                         A);
  CHECK(d.euler_characteristic() == 2);
}

TEST_CASE("serialization round trip") {
  auto         np    = normalized(kWordS1M1, 2);
  auto         cells = RelatorCells::from(np);
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto d    = random_diagram(rng, cells, {.faces = 1 + i % 7});
    auto text = serialize_diagram(d);
    auto back = parse_diagram(text, np.alphabet);
    CHECK(serialize_diagram(back) == text);
    CHECK(back.vertex_count() == d.vertex_count());
  }
}

TEST_CASE("fuzzed mutations of explicit constructions are rejected") {
  auto np    = normalized(kWordS1M1, 2);
  auto cells = RelatorCells::from(np);
  std::vector<Diagram> samples{phi_bigon(cells, E(np.alphabet, "b@0")), kcell_disk(cells, 1),
                               kcell_disk(cells, -1)};
  for (auto const& d : samples) {
    REQUIRE(validate(d, np).valid());
    // Flip one edge: the boundary walks no longer close up.
    for (int e = 0; e < d.edge_count(); ++e) {
      auto edges = d.edges();
      std::swap(edges[e].tail, edges[e].head);
      if (edges[e].tail == edges[e].head) {
        continue;
      }
      bool rejected = false;
      try {
        rejected = !validate(Diagram::make(d.alphabet(), edges, d.faces()), np).valid();
      } catch (Error const&) {
        rejected = true;
      }
      CHECK(rejected);
    }
    // Perturb one corner.
    for (int f = 0; f < d.face_count(); ++f) {
      for (std::size_t i = 0; i < d.faces()[f].corners.size(); ++i) {
        auto faces          = d.faces();
        faces[f].corners[i] = faces[f].corners[i] * E(np.alphabet, "b@1");
        CHECK_FALSE(validate(Diagram::make(d.alphabet(), d.edges(), faces), np).valid());
      }
    }
  }
}

TEST_CASE("random gluings are valid, alternate and are spheres") {
  std::mt19937 rng(99);
  for (auto w : {kWordS1M1, kWordS1M0, kWordS0M1}) {
    auto np    = normalized(w, 2);
    auto cells = RelatorCells::from(np);
    for (int i = 0; i < 30; ++i) {
      auto d = random_diagram(rng, cells, {.faces = 1 + i});
      auto r = validate(d, np);
      CHECK(r.valid());
      CHECK(r.phi_reduced);
      CHECK(r.euler == 2);
      for (int v = 0; v < d.vertex_count(); ++v) {
        CHECK(alternation_holds(d, v));
      }
      if (np.m > 0) {
        CHECK(exterior_has_stop_corners(d));
      }
    }
  }
}

TEST_CASE("corner types and vertex kinds") {
  auto A = Alphabet::make(BaseGroup::free({"a"}), 0);
  // Three edges pointing into vertex 0 from a triangle's other corners.
  auto d = parse_diagram(R"({"edges": [{"id": 1, "tail": 1, "head": 0}, {"id": 2, "tail": 2, "head": 0},
      {"id": 3, "tail": 1, "head": 2}],
    "faces": [
      {"id": 0, "exterior": false, "boundary": [{"corner": "1"}, {"edge": 1, "dir": "-"}, {"corner": "1"},
        {"edge": 3, "dir": "+"}, {"corner": "1"}, {"edge": 2, "dir": "+"}]},
      {"id": 1, "exterior": true, "boundary": [{"corner": "1"}, {"edge": 2, "dir": "-"}, {"corner": "1"},
        {"edge": 3, "dir": "-"}, {"corner": "1"}, {"edge": 1, "dir": "+"}]}]})",
                         A);
  int v0 = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (d.vertex_id(v) == 0) {
      v0 = v;
    }
  }
  CHECK(classify_vertex(d, v0) == VertexKind::kSink);
  CHECK(alternation_holds(d, v0));
  for (int v = 0; v < d.vertex_count(); ++v) {
    CHECK(alternation_holds(d, v));
  }
  // Vertex 2: edge 3 comes in, edge 2 goes out.
  int v2 = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (d.vertex_id(v) == 2) {
      v2 = v;
    }
  }
  CHECK(classify_vertex(d, v2) == VertexKind::kMixed);
  int plus = 0, minus = 0;
  for (auto c : d.vertex_corners(v2)) {
    plus += corner_type(d, c) == CornerType::kPlusPlus;
    minus += corner_type(d, c) == CornerType::kMinusMinus;
  }
  CHECK(plus == 1);
  CHECK(minus == 1);
}

TEST_CASE("exterior corner preparation") {
  auto A = Alphabet::make(BaseGroup::free({"a", "b"}), 0);
  auto u = parse_word(A, "t.a.t.b.t^-1.a.t^-1");
  CHECK(ensure_exterior_corners(u, 1).second == 0);
  CHECK(ensure_exterior_corners(u, 0).second == 0);
  auto x = parse_word(A, "a.t.b.t^-1");
  CHECK(ensure_exterior_corners(x, 0).first == x);
  auto [y, n] = ensure_exterior_corners(x, 1);
  CHECK(n > 0);
  CHECK(n <= static_cast<int>(x.length()));
  auto t = TWord::t(A);
  auto z = x;
  for (int i = 0; i < n; ++i) {
    z = t.inverse() * z * t;
  }
  CHECK(y == z);

  auto np = normalized(kWordS1M1, 2);
  auto [v, nv] = ensure_exterior_corners(np.relator(), np.m);
  CHECK(nv <= static_cast<int>(np.relator().length()));
  CHECK(is_conjugate(v, np.relator()));

  // Conjugating by t^2 already creates both subwords unless u is trivial.
  CHECK(ensure_exterior_corners(parse_word(A, "a.b"), 1).second == 2);
  CHECK_THROWS_AS(ensure_exterior_corners(TWord::identity(A), 1), Error);
}
