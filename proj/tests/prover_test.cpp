#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "relhyp/certificate_io.hpp"
#include "relhyp/construct.hpp"
#include "relhyp/error.hpp"
#include "relhyp/prover.hpp"
#include "support.hpp"

using namespace relhyp;
using namespace relhyp::testing;

namespace {

TWord W(AlphabetPtr const& alphabet, char const* text) {
  return parse_word(alphabet, text);
}

// G = <a | a^3>, w = a^-1 t^-1 a t, k = 3.
RelatorPresentation cyclic_example() {
  auto G = BaseGroup::finite_cyclic("a", 3);
  auto A = Alphabet::make(G, 0);
  return RelatorPresentation::make(G, W(A, "a^-1.t^-1.a.t"), 3, true);
}

TWord commutator(TWord const& x, TWord const& y) {
  return x * y * x.inverse() * y.inverse();
}

std::vector<Diagram> diagrams_over(RelatorCells const& cells, std::mt19937& rng) {
  std::vector<Diagram> out;
  for (int i = 0; i < 6; ++i) {
    out.push_back(random_diagram(rng, cells, {.faces = 1 + 4 * i}));
  }
  return out;
}

}  // namespace

TEST_CASE("isoperimetric constant") {
  CHECK(isoperimetric_constant(2) == Rational(1, 2));
  CHECK(isoperimetric_constant(3) == Rational(1, 4));
  CHECK(isoperimetric_constant(5) == Rational(1, 8));
  CHECK(isoperimetric_constant(11) == Rational(1, 20));
  CHECK_THROWS_AS(isoperimetric_constant(1), Error);
}

TEST_CASE("single relator certificates") {
  auto p  = presentation(kWordS1M1, 2);
  auto id = TWord::identity(p.alphabet());
  AreaCertificate cert{CertificateContext::kStarting, p.relator(), {{id, RelatorKind::kCell, std::nullopt, 1}}};
  CHECK(verify_certificate(cert, p));
  cert.terms[0].sign = -1;
  CHECK_FALSE(verify_certificate(cert, p));
  cert.terms[0].sign = 1;
  cert.terms[0].kind = RelatorKind::kPhi;
  CHECK_THROWS_AS(verify_certificate(cert, p), Error);
  cert.context = CertificateContext::kNormalized;
  CHECK_THROWS_AS(verify_certificate(cert, p), Error);
}

TEST_CASE("commuting pair over the cyclic group of order 3") {
  auto p = cyclic_example();
  auto A = p.alphabet();
  auto x = W(A, "t^-1.a.t.a");
  auto y = W(A, "a.t^-1.a.t");
  auto u = commutator(x, y);
  // In <a>_3 * <t>, x y x^-1 y^-1 = (a^t a^-1)^3 = a w^3 a^-1.
  CHECK(u == W(A, "t^-1.a.t.a^-1").pow(3));
  AreaCertificate cert{CertificateContext::kStarting, u, {{W(A, "a^-1"), RelatorKind::kCell, std::nullopt, 1}}};
  CHECK(verify_certificate(cert, p));
  cert.terms[0].sign = -1;
  CHECK_FALSE(verify_certificate(cert, p));
  // a^-t = w^-1 a^-1 works as well, since w commutes with w^3.
  cert.terms[0] = {W(A, "t^-1.a^-1.t"), RelatorKind::kCell, std::nullopt, 1};
  CHECK(verify_certificate(cert, p));
  cert.terms[0].sign = -1;
  CHECK_FALSE(verify_certificate(cert, p));

  auto found = bounded_prove(u, p, {.max_terms = 1, .max_conj_len = 3});
  REQUIRE(found.certificate);
  CHECK(found.certificate->h() == 1);
  CHECK(found.certificate->terms[0].f.length() <= 3);
  CHECK(verify_certificate(*found.certificate, p));
}

TEST_CASE("certificates read off diagrams") {
  std::mt19937 rng(3);
  for (auto w : {kWordS1M1, kWordS1M0, kWordS0M1}) {
    for (int k : {2, 3}) {
      CAPTURE(w);
      CAPTURE(k);
      auto np    = normalized(w, k);
      auto p     = presentation(w, k);
      auto cells = RelatorCells::from(np);
      auto ds    = diagrams_over(cells, rng);
      ds.push_back(kcell_disk(cells, 1));
      ds.push_back(kcell_disk(cells, -1));
      ds.push_back(mirror_pair(cells));
      if (np.s > 0) {
        auto pa = parse_element(np.alphabet, "a@0");
        ds.push_back(phi_bigon(cells, pa));
        ds.push_back(phi_pair(cells, pa, parse_element(np.alphabet, "b@0")));
      }
      for (auto const& d : ds) {
        auto cert = certificate_from_diagram(d, np);
        CHECK(cert.h() == d.face_count() - 1);
        CHECK(cert.u == face_word(d, d.exterior()));
        CHECK(verify_certificate(cert, np));
        auto report = validate(d, np);
        CHECK(cert.e() == report.k_cell_count());
        auto start = collapse_certificate(cert, np);
        CHECK(start.e() == cert.e());
        CHECK(start.h() == cert.e());
        CHECK(verify_certificate(start, p));
        CHECK(start.u == substitute_back(cert.u));
      }
    }
  }
}

TEST_CASE("phi-only certificates collapse to nothing") {
  auto np   = normalized(kWordS1M1, 2);
  auto d    = phi_bigon(RelatorCells::from(np), parse_element(np.alphabet, "a@0.b@0"));
  auto cert = certificate_from_diagram(d, np);
  REQUIRE(cert.h() == 1);
  CHECK(cert.terms[0].kind == RelatorKind::kPhi);
  auto start = collapse_certificate(cert, np);
  CHECK(start.h() == 0);
  CHECK(start.u.is_identity());
}

TEST_CASE("starting presentation diagrams") {
  auto p     = presentation(kWordS1M1, 3);
  auto cells = RelatorCells::from(p);
  auto d     = kcell_disk(cells, 1);
  auto cert  = certificate_from_diagram(d, p);
  CHECK(cert.h() == 1);
  CHECK(verify_certificate(cert, p));
}

TEST_CASE("area statistics on diagrams") {
  std::mt19937 rng(5);
  for (auto w : {kWordS1M1, kWordS1M0, kWordS0M1}) {
    for (int k : {2, 3}) {
      auto np = normalized(w, k);
      for (auto const& d : diagrams_over(RelatorCells::from(np), rng)) {
        auto s = area_stats(d, np);
        CHECK(s.C == isoperimetric_constant(k));
        CHECK(s.h == s.e);
        CHECK(s.cell_bound);
        CHECK(s.loose_bound);
        CHECK(s.boundary_length >= s.f);
        if (s.alternating) {
          CHECK(s.sharp_bound);
        }
      }
    }
  }
}

TEST_CASE("area statistics without k-cells") {
  auto np = normalized(kWordS1M0, 2);
  auto d  = phi_bigon(RelatorCells::from(np), parse_element(np.alphabet, "a@0"));
  auto s  = area_stats(d, np);
  CHECK(s.e == 0);
  CHECK(s.d_phi == 1);
  CHECK(s.f >= 2);
  CHECK(s.cell_bound);
}

TEST_CASE("bounded search finds planted certificates") {
  auto p = presentation(kWordS1M1, 2);
  auto A = p.alphabet();
  {
    auto r = bounded_prove(p.relator(), p, {});
    REQUIRE(r.certificate);
    CHECK(r.certificate->h() == 1);
    CHECK(r.certificate->terms[0].f.is_identity());
  }
  {
    auto f = W(A, "b.t");
    auto u = f.inverse() * p.relator() * f;
    auto r = bounded_prove(u, p, {.max_terms = 1, .max_conj_len = 2});
    REQUIRE(r.certificate);
    CHECK(verify_certificate(*r.certificate, p));
  }
  {
    auto r = bounded_prove(TWord::identity(A), p, {});
    REQUIRE(r.certificate);
    CHECK(r.certificate->h() == 0);
  }
  {
    // The rotation conjugator of a^-1 R^-1 a is long; a itself is found
    // through the centralizer of R.
    auto f = W(A, "a");
    auto u = f.inverse() * p.relator().inverse() * f;
    auto r = bounded_prove(u, p, {.max_terms = 1, .max_conj_len = 1});
    REQUIRE(r.certificate);
    CHECK(r.certificate->terms[0].f == f);
    CHECK(r.certificate->terms[0].sign == -1);
  }
  {
    // t has exponent sum 1, so no product of relator conjugates equals it.
    auto r = bounded_prove(W(A, "t"), p, {.max_terms = 2, .max_conj_len = 1});
    CHECK_FALSE(r.certificate);
  }
}

TEST_CASE("bounded search over the normalized presentation") {
  auto np = normalized(kWordS1M1, 2);
  auto A  = np.alphabet;
  auto f  = W(A, "a@1");
  auto u  = f.inverse() * np.phi_relator(parse_element(A, "b@0")) * f;
  auto r  = bounded_prove(u, np, {.max_terms = 1, .max_conj_len = 1});
  REQUIRE(r.certificate);
  CHECK(r.certificate->terms[0].kind == RelatorKind::kPhi);
  CHECK(verify_certificate(*r.certificate, np));
}

TEST_CASE("planted instances and soundness") {
  std::mt19937 rng(17);
  for (auto w : {kWordS1M1, kWordS0M1}) {
    auto p = presentation(w, 2);
    auto A = p.alphabet();
    for (int i = 0; i < 6; ++i) {
      int   E = 1 + i % 2;
      auto  u = TWord::identity(A);
      for (int j = 0; j < E; ++j) {
        auto f = random_word(rng, A, 2);
        u      = u * f.inverse() * p.relator().pow(rng() % 2 ? 1 : -1) * f;
      }
      auto r = bounded_prove(u, p, {.max_terms = E, .max_conj_len = 2});
      REQUIRE(r.certificate);
      CHECK(verify_certificate(*r.certificate, p));
    }
    for (int i = 0; i < 10; ++i) {
      auto u = random_word(rng, A, 8);
      auto r = bounded_prove(u, p, {.max_terms = 1 + i % 2, .max_conj_len = i % 3});
      if (r.certificate) {
        CHECK(verify_certificate(*r.certificate, p));
      }
    }
  }
}

TEST_CASE("shortlex conjugator enumeration") {
  auto A = presentation(kWordS1M1, 2).alphabet();
  auto w = words_up_to(A, 2);
  // 1 + 6 + 6 * 5 reduced words over t, a, b and inverses.
  CHECK(w.size() == 37);
  CHECK(w.front().is_identity());
  for (std::size_t i = 1; i < w.size(); ++i) {
    CHECK(shortlex_less(w[i - 1], w[i]));
  }
}

TEST_CASE("certificate files") {
  auto p    = cyclic_example();
  auto text = R"({"u": "t^-1.a.t.a^-1.t^-1.a.t.a^-1.t^-1.a.t.a^-1",
                  "terms": [{"f": "t^-1.a^-1.t", "R": "k", "sign": 1}]})";
  auto cert = parse_certificate(text, p.alphabet());
  CHECK(cert.context == CertificateContext::kStarting);
  CHECK(verify_certificate(cert, p));
  auto again = parse_certificate(serialize_certificate(cert), p.alphabet());
  CHECK(again.u == cert.u);
  CHECK(again.terms[0].f == cert.terms[0].f);
  CHECK(again.terms[0].sign == 1);

  auto np   = normalized(kWordS1M1, 2);
  auto d    = phi_pair(RelatorCells::from(np), parse_element(np.alphabet, "a@0"), parse_element(np.alphabet, "b@0"));
  auto ncert = certificate_from_diagram(d, np);
  auto back = parse_certificate(serialize_certificate(ncert), presentation(kWordS1M1, 2).alphabet(), np.alphabet);
  CHECK(back.context == CertificateContext::kNormalized);
  REQUIRE(back.h() == ncert.h());
  CHECK(back.terms[0].kind == RelatorKind::kPhi);
  CHECK(verify_certificate(back, np));
  CHECK_THROWS_AS(parse_certificate(serialize_certificate(ncert), p.alphabet()), Error);

  for (auto bad : {R"({"terms": []})", R"({"u": "1", "terms": [{"f": "1", "R": "x", "sign": 1}]})",
                   R"({"u": "1", "terms": [{"f": "1", "R": "k", "sign": 2}]})", R"({"u": "1", "context": "x", "terms": []})",
                   "[", R"({"u": "z", "terms": []})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_certificate(bad, p.alphabet()), Error);
  }
}
