#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zinv/algebra.hpp"
#include "zinv/labelled.hpp"

namespace zinv {

// Codimension-one faces of the two compactifications. C_V(M) has F(inf;B) for
// every nonempty B subset of V and F(B) for every B with at least 2 elements;
// S_V(X) has f(B) for strict such B.
enum class FaceKind { InfinityB, CollapseB, AnomalySlice };
enum class Ambient { CV, SV };

struct FaceDescriptor {
  FaceKind kind = FaceKind::CollapseB;
  std::vector<int> B;  // sorted vertex labels

  std::string label(const std::vector<int>& V) const;  // "F(V)", "F(inf;{1,2})", ...
};

// All codim-1 faces for the given vertex label set, ordered by (kind, |B|,
// lex B). EmptyV if V is empty.
std::vector<FaceDescriptor> enumerate_faces(const std::vector<int>& V, Ambient amb);

// Case analysis of the cancellation lemmas, applied in their order.
struct Classification {
  enum class Kind {
    VanishesAtInfinity,    // F(inf;B), Gamma connected
    VanishesDisconnected,  // Gamma_B not connected
    VanishesUnivalent,     // |B| >= 3, some vertex of B on exactly 1 edge of Gamma_B
    CancelsBySigma,        // some vertex of B on exactly 2 edges of Gamma_B
    IHXFamily,             // |B| = 2, Gamma_B a single edge
    AnomalyFaceFV,         // B = V, all vertices trivalent in Gamma_B
    Unclassifiable,        // must not occur on E_n members
  } kind = Kind::Unclassifiable;
  int v_m = 0;             // CancelsBySigma: the smallest-label 2-edge vertex
  int ell = 0, v_j = 0, v_k = 0;  // IHXFamily: edge label and its origin/end
};

std::string classification_name(Classification::Kind k);

Classification classify_face(const Labelled& g, const FaceDescriptor& f);

// The pairing involution of the two-edge lemma: reverse the orientations of the
// two Gamma_B edges at v_m and exchange their labels. NotApplicable unless the
// face classifies CancelsBySigma.
Labelled sigma_involution(const std::vector<int>& B, const Labelled& g);

// The 6-element family sharing an IHX face: all members of E_n with edge ell
// running v_j -> v_k and the same quotient by Gamma_B. Deterministic order.
// NotApplicable unless the face classifies IHXFamily.
std::vector<Labelled> ihx_family(const Labelled& g, const std::vector<int>& B);

struct CancellationReport {
  int degree = 0;
  long long faces_total = 0;               // classified (diagram, face) instances
  std::map<std::string, long long> by_class;
  long long ihx_groups = 0;                // distinct 6-families
  long long sigma_pairs = 0;               // distinct 2-element sigma orbits
  long long sigma_fixed = 0;               // sigma fixed points (anti-parallel pairs)
  long long sigma_on_parallel_pair = 0;    // |B|=2 faces resolved by sigma, not IHX
  std::vector<std::string> survivors;      // face labels outside the lemmas
  std::vector<std::string> gaps;           // verification failures; empty = pass

  bool pass() const { return gaps.empty(); }
};

// Exhaustive sweep over E_n x faces(C_V): classify everything, verify the sigma
// pairing (involutive, class-equal, same classification) and every IHX family
// (6 members, zero class sum). Throws nothing; failures land in `gaps`.
CancellationReport boundary_cancellation_check(int n);

nlohmann::json cancellation_report_to_json(const CancellationReport& r);

}  // namespace zinv
