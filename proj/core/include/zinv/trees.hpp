#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zinv/errors.hpp"
#include "zinv/rng.hpp"

namespace zinv {

struct TreeMember {
  std::vector<int> set;  // sorted labels
  int b = 0;             // basepoint, in set
  int bprime = 0;        // witness, != b unless |set| == 1
  bool degenerate = false;
};

// Laminar collapse tree over the label set V. Finite variant: members all have
// |A| >= 2, none degenerate, V itself a member. Infinity variant: the special
// chain V = V(1) .. V(sigma) is derived by the basepoint walk (see
// special_chain); every member outside the chain must be degenerate, and only
// chain members may be singletons.
struct NestedTree {
  std::vector<int> V;
  std::vector<TreeMember> members;
  enum class Variant { Finite, Infinity } variant = Variant::Finite;

  int member_index(const std::vector<int>& set) const;  // -1 if absent
};

// Structured validation: empty list iff the tree is valid.
std::vector<std::string> validate_tree(const NestedTree& t);

// Derived layout shared by the chart maps: parent/daughter relations by member
// index (-1 = no parent), sons (elements not in any daughter), and for the
// infinity variant the special chain as member indices.
struct TreeLayout {
  std::vector<int> parent;
  std::vector<std::vector<int>> daughters;
  std::vector<std::vector<int>> sons;
  std::vector<int> chain;  // infinity variant: V(1)..V(sigma); else empty

  int sigma() const { return static_cast<int>(chain.size()); }
};

TreeLayout layout_tree(const NestedTree& t);  // InvariantViolation if invalid

// k = #tau (finite) or sigma + #tau_d (infinity; V(sigma) counts in both when
// degenerate).
int codim(const NestedTree& t);

nlohmann::json tree_to_json(const NestedTree& t);
NestedTree tree_from_json(const nlohmann::json& j);

// Random valid trees for property tests: uniform-ish laminar families with
// bounded depth and size, rejection-sampling the invariants.
NestedTree random_finite_tree(Rng& rng, int max_v, int max_depth);
NestedTree random_infinity_tree(Rng& rng, int max_v, int max_sigma);

}  // namespace zinv
