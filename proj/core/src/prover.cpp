#include "relhyp/prover.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <span>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

[[noreturn]] void bad_certificate(std::string const& what) {
  throw Error(ErrorCode::kCertificate, what);
}

void require_alphabet(TWord const& w, AlphabetPtr const& alphabet) {
  if (!w.alphabet()->same_structure(*alphabet)) {
    bad_certificate("certificate words are over the wrong alphabet");
  }
}

TWord conjugate(TWord const& f, TWord const& r) {
  return f.inverse() * r * f;
}

// Shortest letter period of a reduced word, as a word.
TWord primitive_root(TWord const& y) {
  auto const&       l = y.letters();
  std::size_t const n = l.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) {
      continue;
    }
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) {
      periodic = l[i] == l[i - d];
    }
    if (periodic) {
      return TWord::from_letters(y.alphabet(), std::span<Letter const>(l.data(), d));
    }
  }
  return y;
}

// Shortlex-least c with x = c^-1 y c and |c| <= max_len. Every such c is
// root^j c0 for one solution c0, so a window of j around 0 covers them all.
std::optional<TWord> short_conjugator(TWord const& x, TWord const& y, int max_len) {
  auto c0 = find_conjugator(x, y);
  if (!c0) {
    return std::nullopt;
  }
  auto root = primitive_root(y);
  int  span = static_cast<int>((c0->length() + max_len) / std::max<std::size_t>(root.length(), 1)) + 1;
  std::optional<TWord> best;
  auto step = root.pow(-span) * *c0;
  for (int j = -span; j <= span; ++j, step = root * step) {
    if (static_cast<int>(step.length()) <= max_len && (!best || shortlex_less(step, *best))) {
      best = step;
    }
  }
  return best;
}

template <class Presentation>
bool verify_with(AreaCertificate const& cert, Presentation const& p, AlphabetPtr const& alphabet) {
  require_alphabet(cert.u, alphabet);
  auto product = TWord::identity(alphabet);
  for (auto const& term : cert.terms) {
    require_alphabet(term.f, alphabet);
    product = product * conjugate(term.f, term_relator(term, p));
  }
  return (cert.u.inverse() * product).is_identity();
}

TWord signed_power(TWord const& r, int sign) {
  if (sign != 1 && sign != -1) {
    bad_certificate("term sign must be +1 or -1");
  }
  return sign > 0 ? r : r.inverse();
}

// The word read along a run of boundary entries followed by a trailing corner.
struct Entry {
  FPElement corner;
  Traversal tr;
};

TWord boundary_word(AlphabetPtr const& alphabet, std::vector<Entry> const& entries, std::size_t from,
                    FPElement const& tail) {
  std::vector<WordItem> raw;
  for (std::size_t i = from; i < entries.size(); ++i) {
    raw.emplace_back(entries[i].corner);
    raw.emplace_back(entries[i].tr.sign > 0 ? TLetter::kPos : TLetter::kNeg);
  }
  raw.emplace_back(tail);
  return tword_reduce(alphabet, raw);
}

// Peels interior faces off the boundary along a breadth-first dual tree.
// With W = A t^s B and the face read from the shared edge as R = t^-s C,
// W = (A C B) (B^-1 R^-1 B); the last face peeled gives the first term.
AreaCertificate peel(Diagram const& d, RelatorCells const& cells, CertificateContext context,
                     std::function<TWord(FaceClass const&)> const& relator) {
  auto const& A = d.alphabet();
  int const   X = d.exterior();
  std::vector<int> parent_edge(d.face_count(), -1);
  std::vector<bool> seen(d.face_count(), false);
  std::vector<int>  order;
  std::deque<int>   queue{X};
  seen[X] = true;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (auto const& tr : d.faces()[f].edges) {
      int g = d.traversal(tr.edge, -tr.sign).face;
      if (!seen[g]) {
        seen[g]        = true;
        parent_edge[g] = tr.edge;
        order.push_back(g);
        queue.push_back(g);
      }
    }
  }

  std::vector<Entry> entries;
  auto const&        ext = d.faces()[X];
  for (std::size_t i = 0; i < ext.edges.size(); ++i) {
    entries.push_back({ext.corners[i], ext.edges[i]});
  }
  FPElement tail = FPElement::identity(A);

  AreaCertificate cert{context, face_word(d, X), {}};
  for (int f : order) {
    auto fc = classify_face(d, f, cells);
    if (fc.kind != FaceKind::kKCell && fc.kind != FaceKind::kPhiCell) {
      throw Error(ErrorCode::kMalformedDiagram, "face " + std::to_string(d.faces()[f].id) + " is not a relator cell");
    }
    int  e  = parent_edge[f];
    auto it = std::find_if(entries.begin(), entries.end(), [&](Entry const& x) { return x.tr.edge == e; });
    if (it == entries.end()) {
      throw Error(ErrorCode::kMalformedDiagram, "dual tree edge missing from the boundary");
    }
    auto const  i    = static_cast<std::size_t>(it - entries.begin());
    auto const  mine = d.traversal(e, -it->tr.sign);
    auto const& face = d.faces()[f];
    int const   n    = static_cast<int>(face.edges.size());
    int const   j    = mine.pos;

    CertificateTerm term{TWord::identity(A), fc.kind == FaceKind::kKCell ? RelatorKind::kCell : RelatorKind::kPhi,
                         fc.p, 0};
    int sign  = fc.kind == FaceKind::kKCell ? fc.sign : 1;
    auto rel  = signed_power(relator(fc), sign);
    auto R    = face_word_from_edge(d, f, j);
    auto c    = find_conjugator(R, rel);
    if (!c) {
      throw Error(ErrorCode::kMalformedDiagram, "face label is not a relator conjugate");
    }
    term.f    = *c * boundary_word(A, entries, i + 1, tail);
    term.sign = -sign;
    cert.terms.push_back(std::move(term));

    std::vector<Entry> replacement;
    for (int q = 1; q < n; ++q) {
      int at = (j + q) % n;
      replacement.push_back({face.corners[at], face.edges[at]});
    }
    replacement.front().corner = it->corner * replacement.front().corner;
    if (i + 1 < entries.size()) {
      entries[i + 1].corner = face.corners[j] * entries[i + 1].corner;
    } else {
      tail = face.corners[j] * tail;
    }
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(i));
    entries.insert(entries.begin() + static_cast<std::ptrdiff_t>(i), replacement.begin(), replacement.end());
  }
  if (!boundary_word(A, entries, 0, tail).is_identity()) {
    throw Error(ErrorCode::kMalformedDiagram, "boundary does not collapse; vertex labels are not trivial");
  }
  std::reverse(cert.terms.begin(), cert.terms.end());
  return cert;
}

std::vector<Letter> ambient_letters(Alphabet const& alphabet) {
  std::vector<Letter> out{kT, kTInv};
  bool const          cyclic = alphabet.base().kind() == BaseKind::kFiniteCyclic;
  for (int f = 0; f < alphabet.factor_count(); ++f) {
    for (int g = 0; g < alphabet.base().rank(); ++g) {
      out.push_back(alphabet.base_letter(f, g, false));
      if (!cyclic) {
        out.push_back(alphabet.base_letter(f, g, true));
      }
    }
  }
  return out;
}

struct Choice {
  CertificateTerm term;  // f left empty
  TWord           relator;
  int             exponent;
};

class Search {
 public:
  // `step` is the t-exponent sum of the cell relator.
  Search(TWord u, std::vector<Choice> choices, int step, bool phi)
      : u_(std::move(u)), choices_(std::move(choices)), step_(step), phi_(phi) {}

  std::optional<std::vector<CertificateTerm>> run(int terms, std::vector<TWord> const& conj, int max_len) {
    conj_    = &conj;
    max_len_ = max_len;
    std::vector<CertificateTerm> acc;
    if (descend(u_, terms, acc)) {
      return acc;
    }
    return std::nullopt;
  }

  long nodes = 0;

 private:
  // Can `r` terms have t-exponent sum x?
  bool reachable(int x, int r) const {
    if (step_ == 0 || x % step_ != 0) {
      return x == 0;
    }
    int q = std::abs(x / step_);
    for (int a = phi_ ? 0 : r; a <= r; ++a) {
      if (q <= a && (a - q) % 2 == 0) {
        return true;
      }
    }
    return false;
  }

  bool descend(TWord const& x, int r, std::vector<CertificateTerm>& acc) {
    if (!reachable(tword_exponent_sum(x), r)) {
      return false;
    }
    if (r == 1) {
      for (auto const& ch : choices_) {
        ++nodes;
        if (tword_exponent_sum(x) != ch.exponent) {
          continue;
        }
        auto c = short_conjugator(x, ch.relator, max_len_);
        if (c) {
          acc.push_back(ch.term);
          acc.back().f = *c;
          return true;
        }
      }
      return false;
    }
    for (auto const& f : *conj_) {
      for (auto const& ch : choices_) {
        ++nodes;
        auto t = conjugate(f, ch.relator);
        acc.push_back(ch.term);
        acc.back().f = f;
        if (descend(t.inverse() * x, r - 1, acc)) {
          return true;
        }
        acc.pop_back();
      }
    }
    return false;
  }

  TWord                     u_;
  std::vector<Choice>       choices_;
  int                       step_;
  bool                      phi_;
  std::vector<TWord> const* conj_    = nullptr;
  int                       max_len_ = 0;
};

ProveResult prove_with(TWord const& u, AlphabetPtr const& alphabet, std::vector<Choice> choices, int k,
                       ProveLimits const& limits, CertificateContext context,
                       std::function<bool(AreaCertificate const&)> const& verify) {
  require_alphabet(u, alphabet);
  ProveResult out;
  int         max_terms = limits.max_terms;
  if (limits.area_cap) {
    auto cap  = isoperimetric_constant(k) * Rational(static_cast<std::int64_t>(u.length()));
    auto ceil = -floor(-cap);
    max_terms = std::min<int>(max_terms, static_cast<int>(ceil));
  }
  bool const phi = std::any_of(choices.begin(), choices.end(),
                               [](Choice const& c) { return c.term.kind == RelatorKind::kPhi; });
  int const step = choices.front().exponent;
  Search    search(u, std::move(choices), step, phi);
  for (int E = 0; E <= max_terms && !out.certificate; ++E) {
    if (E == 0) {
      if (u.is_identity()) {
        out.certificate = AreaCertificate{context, u, {}};
      }
      continue;
    }
    for (int L = 0; L <= limits.max_conj_len; ++L) {
      auto conj  = words_up_to(alphabet, L);
      auto terms = search.run(E, conj, L);
      if (terms) {
        out.certificate = AreaCertificate{context, u, std::move(*terms)};
        break;
      }
    }
  }
  out.nodes = search.nodes;
  if (out.certificate && !verify(*out.certificate)) {
    throw Error(ErrorCode::kCertificate, "search produced a certificate that does not verify");
  }
  return out;
}

}  // namespace

Rational isoperimetric_constant(int k) {
  if (k < 2) {
    throw Error(ErrorCode::kInvalidArgument, "k must be at least 2");
  }
  return Rational(1, 2 * (k - 1));
}

char const* to_string(CertificateContext context) noexcept {
  return context == CertificateContext::kStarting ? "starting" : "normalized";
}

int AreaCertificate::e() const {
  return static_cast<int>(std::count_if(terms.begin(), terms.end(),
                                        [](CertificateTerm const& t) { return t.kind == RelatorKind::kCell; }));
}

TWord term_relator(CertificateTerm const& term, RelatorPresentation const& p) {
  if (term.kind != RelatorKind::kCell) {
    bad_certificate("phi-relators do not exist over the starting presentation");
  }
  return signed_power(p.w().pow(p.k()), term.sign);
}

TWord term_relator(CertificateTerm const& term, NormalizedPresentation const& np) {
  if (term.kind == RelatorKind::kCell) {
    return signed_power(np.relator(), term.sign);
  }
  if (!term.p || term.p->is_identity() || !term.p->alphabet()->same_structure(*np.alphabet) ||
      !membership_in_P(*term.p, Side::kP, np.s)) {
    bad_certificate("phi-term needs p in P \\ {1}");
  }
  return signed_power(np.phi_relator(*term.p), term.sign);
}

bool verify_certificate(AreaCertificate const& cert, RelatorPresentation const& p) {
  if (cert.context != CertificateContext::kStarting) {
    bad_certificate("certificate is over the normalized presentation");
  }
  return verify_with(cert, p, p.alphabet());
}

bool verify_certificate(AreaCertificate const& cert, NormalizedPresentation const& np) {
  if (cert.context != CertificateContext::kNormalized) {
    bad_certificate("certificate is over the starting presentation");
  }
  return verify_with(cert, np, np.alphabet);
}

AreaCertificate certificate_from_diagram(Diagram const& d, NormalizedPresentation const& np) {
  return peel(d, RelatorCells::from(np), CertificateContext::kNormalized, [&](FaceClass const& fc) {
    return fc.kind == FaceKind::kKCell ? np.relator() : np.phi_relator(*fc.p);
  });
}

AreaCertificate certificate_from_diagram(Diagram const& d, RelatorPresentation const& p) {
  return peel(d, RelatorCells::from(p), CertificateContext::kStarting,
              [&](FaceClass const&) { return p.w().pow(p.k()); });
}

AreaCertificate collapse_certificate(AreaCertificate const& cert, NormalizedPresentation const& np) {
  if (!verify_certificate(cert, np)) {
    bad_certificate("certificate does not verify over the normalized presentation");
  }
  AreaCertificate out{CertificateContext::kStarting, substitute_back(cert.u), {}};
  for (auto const& term : cert.terms) {
    if (term.kind == RelatorKind::kPhi) {
      continue;
    }
    out.terms.push_back({np.back_conjugator * substitute_back(term.f), RelatorKind::kCell, std::nullopt, term.sign});
  }
  return out;
}

AreaStats area_stats(Diagram const& d, NormalizedPresentation const& np) {
  AreaStats out;
  auto      report = validate(d, np);
  out.e            = report.k_cell_count();
  out.d_phi        = report.phi_cell_count();
  out.k            = np.k;
  out.C            = isoperimetric_constant(np.k);
  auto const& ext  = d.faces()[d.exterior()];
  out.f            = static_cast<int>(ext.edges.size());
  out.boundary_length = out.f;
  out.alternating     = true;
  for (auto const& c : ext.corners) {
    out.boundary_length += static_cast<int>(c.letters().size());
    out.alternating = out.alternating && !c.is_identity();
  }
  out.h          = collapse_certificate(certificate_from_diagram(d, np), np).h();
  out.cell_bound = (out.k - 1) * out.e <= out.f - 2;
  out.loose_bound = (out.k - 1) * out.h < out.boundary_length;
  out.sharp_bound = Rational(out.h) < out.C * Rational(out.boundary_length);
  auto sim              = simulate_collisions(d, build_standard_schedules(d, np));
  out.collision_points  = sim.complete_points;
  out.collisions_within_f = out.collision_points <= out.f;
  return out;
}

std::vector<TWord> words_up_to(AlphabetPtr const& alphabet, int n) {
  auto const         letters = ambient_letters(*alphabet);
  std::vector<TWord> out{TWord::identity(alphabet)};
  std::vector<TWord> level = out;
  for (int len = 1; len <= n; ++len) {
    std::set<std::vector<Letter>> next_letters;
    for (auto const& w : level) {
      for (auto x : letters) {
        auto seq = w.letters();
        seq.push_back(x);
        auto r = TWord::from_letters(alphabet, seq);
        if (static_cast<int>(r.length()) == len) {
          next_letters.insert(r.letters());
        }
      }
    }
    std::vector<TWord> next;
    for (auto const& seq : next_letters) {
      next.push_back(TWord::from_letters(alphabet, seq));
    }
    std::sort(next.begin(), next.end(), shortlex_less);
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

ProveResult bounded_prove(TWord const& u, RelatorPresentation const& p, ProveLimits const& limits) {
  auto                R = p.w().pow(p.k());
  int                 x = tword_exponent_sum(R);
  std::vector<Choice> choices{{{TWord::identity(p.alphabet()), RelatorKind::kCell, std::nullopt, 1}, R, x},
                              {{TWord::identity(p.alphabet()), RelatorKind::kCell, std::nullopt, -1}, R.inverse(), -x}};
  return prove_with(u, p.alphabet(), std::move(choices), p.k(), limits, CertificateContext::kStarting,
                    [&](AreaCertificate const& c) { return verify_certificate(c, p); });
}

ProveResult bounded_prove(TWord const& u, NormalizedPresentation const& np, ProveLimits const& limits) {
  auto const&         A  = np.alphabet;
  auto                id = TWord::identity(A);
  auto                R  = np.relator();
  int                 x  = tword_exponent_sum(R);
  std::vector<Choice> choices{{{id, RelatorKind::kCell, std::nullopt, 1}, R, x},
                              {{id, RelatorKind::kCell, std::nullopt, -1}, R.inverse(), -x}};
  for (int f = 0; f < np.s; ++f) {
    for (int g = 0; g < A->base().rank(); ++g) {
      auto gen = FPElement::generator(A, f, g);
      for (auto const& p : {gen, gen.inverse()}) {
        auto r = np.phi_relator(p);
        choices.push_back({{id, RelatorKind::kPhi, p, 1}, r, 0});
        choices.push_back({{id, RelatorKind::kPhi, p, -1}, r.inverse(), 0});
      }
    }
  }
  return prove_with(u, A, std::move(choices), np.k, limits, CertificateContext::kNormalized,
                    [&](AreaCertificate const& c) { return verify_certificate(c, np); });
}

}  // namespace relhyp
