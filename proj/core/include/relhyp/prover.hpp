#ifndef RELHYP_PROVER_HPP_
#define RELHYP_PROVER_HPP_

#include <optional>
#include <vector>

#include "relhyp/diagram.hpp"
#include "relhyp/motion.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/rational.hpp"

namespace relhyp {

// 1 / (2(k - 1)). Throws kInvalidArgument for k < 2.
Rational isoperimetric_constant(int k);

enum class RelatorKind { kCell, kPhi };
// Which presentation the words of a certificate live over: G * <t> with the
// relator w^k, or H * <t> with v^k and the phi-relators.
enum class CertificateContext { kStarting, kNormalized };

char const* to_string(CertificateContext context) noexcept;

// f^-1 R^sign f, with R = w^k or v^k for kCell and p^t (p^phi)^-1 for kPhi.
struct CertificateTerm {
  TWord                    f;
  RelatorKind              kind = RelatorKind::kCell;
  std::optional<FPElement> p;
  int                      sign = 1;
};

// u equals the product of the terms, in order, in the ambient free product.
struct AreaCertificate {
  CertificateContext           context = CertificateContext::kStarting;
  TWord                        u;
  std::vector<CertificateTerm> terms;

  int h() const {
    return static_cast<int>(terms.size());
  }
  int e() const;
};

// The relator word a term stands for, without its conjugator. Throws
// kCertificate for a malformed selector: a phi term in the starting context,
// or p outside P \ {1}.
TWord term_relator(CertificateTerm const& term, RelatorPresentation const& p);
TWord term_relator(CertificateTerm const& term, NormalizedPresentation const& np);

// Throws kCertificate for malformed selectors or a context mismatch.
bool verify_certificate(AreaCertificate const& cert, RelatorPresentation const& p);
bool verify_certificate(AreaCertificate const& cert, NormalizedPresentation const& np);

// One term per interior face, u = the exterior label read from corner 0.
// Faces are peeled off along a breadth-first spanning tree of the dual graph
// rooted at the exterior. Throws kMalformedDiagram when a face is not a
// relator cell.
AreaCertificate certificate_from_diagram(Diagram const& d, NormalizedPresentation const& np);
// k-cell-only diagrams over the starting presentation.
AreaCertificate certificate_from_diagram(Diagram const& d, RelatorPresentation const& p);

// Drops phi-terms and maps the rest through substitute_back. Throws
// kCertificate when the input does not verify over np.
AreaCertificate collapse_certificate(AreaCertificate const& cert, NormalizedPresentation const& np);

struct AreaStats {
  int      e     = 0;  // k-cells
  int      d_phi = 0;  // phi-cells
  int      f     = 0;  // exterior edges
  int      k     = 2;
  Rational C     = 0;
  // Exterior boundary as read over H: f t-letters plus the letters of every
  // corner label. Always at least f.
  int  boundary_length = 0;
  // Every exterior corner label is nontrivial, so boundary_length >= 2f.
  bool alternating = false;
  int  h           = 0;  // terms over the starting presentation, h = e

  bool cell_bound     = false;  // (k - 1) e <= f - 2
  bool loose_bound    = false;  // (k - 1) h < boundary_length
  bool sharp_bound    = false;  // h < C * boundary_length; asserted only when alternating
  int  collision_points = 0;
  bool collisions_within_f = false;  // complete-collision points <= f
};

// Needs a valid diagram over np with prepared exterior corners.
AreaStats area_stats(Diagram const& d, NormalizedPresentation const& np);

struct ProveLimits {
  int max_terms    = 3;
  int max_conj_len = 3;
  // Cap the term count at ceil(C * |u|). Off by default: the cap holds for
  // minimal diagrams only.
  bool area_cap = false;
};

struct ProveResult {
  std::optional<AreaCertificate> certificate;  // empty means unknown
  long                           nodes = 0;    // candidate products examined
};

// Iterative deepening on the term count, then on the conjugator length.
// Conjugators run in shortlex order and the sign + before -. The last term is
// solved by conjugacy instead of enumeration. Phi-terms use p among the
// generators of P and their inverses. Anything returned verifies.
ProveResult bounded_prove(TWord const& u, RelatorPresentation const& p, ProveLimits const& limits);
ProveResult bounded_prove(TWord const& u, NormalizedPresentation const& np, ProveLimits const& limits);

// Reduced words of length at most n over the ambient alphabet, shortlex.
std::vector<TWord> words_up_to(AlphabetPtr const& alphabet, int n);

}  // namespace relhyp

#endif  // RELHYP_PROVER_HPP_
