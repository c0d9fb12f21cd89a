#include "zinv/trees.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace zinv {

namespace {

bool is_sorted_unique(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> tmp;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(tmp));
  return tmp.empty();
}

bool contains(const std::vector<int>& a, int x) {
  return std::binary_search(a.begin(), a.end(), x);
}

std::string set_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "}";
  return os.str();
}

// Parent/daughter/son structure; assumes laminarity already verified.
struct RawLayout {
  std::vector<int> parent;
  std::vector<std::vector<int>> daughters;
  std::vector<std::vector<int>> sons;
};

RawLayout raw_layout(const NestedTree& t) {
  const int m = static_cast<int>(t.members.size());
  RawLayout L;
  L.parent.assign(m, -1);
  L.daughters.assign(m, {});
  L.sons.assign(m, {});
  for (int i = 0; i < m; ++i) {
    int best = -1;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (t.members[i].set.size() < t.members[j].set.size() &&
          subset_of(t.members[i].set, t.members[j].set)) {
        if (best < 0 ||
            t.members[j].set.size() < t.members[best].set.size())
          best = j;
      }
    }
    L.parent[i] = best;
    if (best >= 0) L.daughters[best].push_back(i);
  }
  for (int i = 0; i < m; ++i) {
    std::set<int> covered;
    for (int d : L.daughters[i])
      covered.insert(t.members[d].set.begin(), t.members[d].set.end());
    for (int x : t.members[i].set)
      if (!covered.count(x)) L.sons[i].push_back(x);
  }
  return L;
}

// The basepoint walk defining the special chain of the infinity variant:
// start at V; from a non-degenerate member step into the daughter holding its
// basepoint; stop at a degenerate member or when no daughter holds it.
std::vector<int> derive_chain(const NestedTree& t, const RawLayout& L, int root) {
  std::vector<int> chain{root};
  while (true) {
    int cur = chain.back();
    if (t.members[cur].degenerate) break;
    int next = -1;
    for (int d : L.daughters[cur])
      if (contains(t.members[d].set, t.members[cur].b)) {
        next = d;
        break;
      }
    if (next < 0) break;
    chain.push_back(next);
  }
  return chain;
}

}  // namespace

int NestedTree::member_index(const std::vector<int>& set) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].set == set) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> validate_tree(const NestedTree& t) {
  std::vector<std::string> bad;
  auto flag = [&](const std::string& s) { bad.push_back(s); };

  if (t.V.empty()) {
    flag("V is empty");
    return bad;
  }
  if (!is_sorted_unique(t.V)) {
    flag("V must be sorted and duplicate-free");
    return bad;
  }
  if (t.members.empty()) {
    flag("no members");
    return bad;
  }

  for (const auto& mb : t.members) {
    if (mb.set.empty()) {
      flag("empty member set");
      return bad;
    }
    if (!is_sorted_unique(mb.set)) {
      flag("member set must be sorted and duplicate-free: " + set_str(mb.set));
      return bad;
    }
    if (!subset_of(mb.set, t.V)) {
      flag("member not a subset of V: " + set_str(mb.set));
      return bad;
    }
  }
  for (std::size_t i = 0; i < t.members.size(); ++i)
    for (std::size_t j = i + 1; j < t.members.size(); ++j)
      if (t.members[i].set == t.members[j].set) {
        flag("duplicate member " + set_str(t.members[i].set));
        return bad;
      }

  // Laminarity.
  for (std::size_t i = 0; i < t.members.size(); ++i)
    for (std::size_t j = i + 1; j < t.members.size(); ++j) {
      const auto& A = t.members[i].set;
      const auto& B = t.members[j].set;
      if (!subset_of(A, B) && !subset_of(B, A) && !disjoint(A, B))
        flag("members overlap without nesting: " + set_str(A) + " vs " +
             set_str(B));
    }
  if (!bad.empty()) return bad;

  int root = t.member_index(t.V);
  if (root < 0) {
    flag("V itself must be a member");
    return bad;
  }

  // Basepoints and witnesses.
  for (const auto& mb : t.members) {
    if (!contains(mb.set, mb.b)) flag("basepoint outside member " + set_str(mb.set));
    if (mb.set.size() == 1) {
      if (mb.bprime != mb.b)
        flag("singleton member must carry bprime == b: " + set_str(mb.set));
    } else {
      if (!contains(mb.set, mb.bprime) || mb.bprime == mb.b)
        flag("bprime must lie in the member and differ from b: " + set_str(mb.set));
    }
  }
  // Coherence: a member containing a descendant's basepoint shares it.
  for (const auto& ma : t.members)
    for (const auto& mb : t.members)
      if (ma.set != mb.set && subset_of(ma.set, mb.set) &&
          contains(ma.set, mb.b) && ma.b != mb.b)
        flag("basepoint coherence broken between " + set_str(ma.set) + " and " +
             set_str(mb.set));
  if (!bad.empty()) return bad;

  RawLayout L = raw_layout(t);

  // b' eligibility: a son of A, or the basepoint of a daughter avoiding b(A).
  for (std::size_t i = 0; i < t.members.size(); ++i) {
    const auto& mb = t.members[i];
    if (mb.set.size() == 1) continue;
    bool ok = false;
    for (int s : L.sons[i])
      if (s == mb.bprime) ok = true;
    for (int d : L.daughters[i]) {
      const auto& dm = t.members[d];
      if (!contains(dm.set, mb.b) && dm.b == mb.bprime) ok = true;
    }
    if (!ok)
      flag("bprime of " + set_str(mb.set) +
           " is neither a son nor the basepoint of a daughter avoiding b");
  }

  if (t.variant == NestedTree::Variant::Finite) {
    for (const auto& mb : t.members) {
      if (mb.set.size() < 2)
        flag("finite-variant members need at least 2 elements: " + set_str(mb.set));
      if (mb.degenerate)
        flag("finite-variant members cannot be degenerate: " + set_str(mb.set));
    }
    return bad;
  }

  // Infinity variant.
  std::vector<int> chain = derive_chain(t, L, root);
  std::set<int> in_chain(chain.begin(), chain.end());

  for (std::size_t i = 0; i < t.members.size(); ++i) {
    const auto& mb = t.members[i];
    bool special = in_chain.count(static_cast<int>(i)) > 0;
    if (!special && !mb.degenerate)
      flag("member outside the special chain must be degenerate: " +
           set_str(mb.set));
    if (mb.degenerate && mb.set.size() < 2)
      flag("degenerate members need at least 2 elements: " + set_str(mb.set));
    if (mb.set.size() == 1 && !special)
      flag("singletons may appear only on the special chain: " + set_str(mb.set));
    if (mb.degenerate)
      for (int d : L.daughters[i])
        if (!t.members[d].degenerate)
          flag("daughters of a degenerate member must be degenerate: " +
               set_str(t.members[d].set));
  }
  // Chain members before the tail are non-degenerate by construction of the
  // walk; the tail may be degenerate (V(sigma) in tau_d) or not.
  // Coherence already forces b(V(i)) = b(V) along the chain; assert anyway.
  for (int ci : chain)
    if (t.members[ci].b != t.members[root].b)
      flag("special chain must share the basepoint of V");
  return bad;
}

TreeLayout layout_tree(const NestedTree& t) {
  auto bad = validate_tree(t);
  if (!bad.empty())
    fail(Err::InvariantViolation, "invalid tree: " + bad.front());
  RawLayout L = raw_layout(t);
  TreeLayout out;
  out.parent = std::move(L.parent);
  out.daughters = std::move(L.daughters);
  out.sons = std::move(L.sons);
  if (t.variant == NestedTree::Variant::Infinity)
    out.chain = derive_chain(t, raw_layout(t), t.member_index(t.V));
  return out;
}

int codim(const NestedTree& t) {
  TreeLayout L = layout_tree(t);
  if (t.variant == NestedTree::Variant::Finite)
    return static_cast<int>(t.members.size());
  int degen = 0;
  for (const auto& mb : t.members)
    if (mb.degenerate) ++degen;
  return L.sigma() + degen;
}

nlohmann::json tree_to_json(const NestedTree& t) {
  nlohmann::json j;
  j["V"] = t.V;
  auto arr = nlohmann::json::array();
  for (const auto& mb : t.members) {
    nlohmann::json m;
    m["set"] = mb.set;
    m["b"] = mb.b;
    m["bprime"] = mb.bprime;
    m["degenerate"] = mb.degenerate;
    arr.push_back(m);
  }
  j["members"] = arr;
  j["variant"] = t.variant == NestedTree::Variant::Finite ? "finite" : "infinity";
  return j;
}

NestedTree tree_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("V") && j.contains("members") &&
              j.contains("variant"),
          Err::MalformedInput, "tree needs V, members, variant");
  NestedTree t;
  for (const auto& v : j.at("V")) t.V.push_back(v.get<int>());
  std::sort(t.V.begin(), t.V.end());
  for (const auto& m : j.at("members")) {
    require(m.is_object() && m.contains("set") && m.contains("b") &&
                m.contains("bprime") && m.contains("degenerate"),
            Err::MalformedInput, "member needs set, b, bprime, degenerate");
    TreeMember mb;
    for (const auto& v : m.at("set")) mb.set.push_back(v.get<int>());
    std::sort(mb.set.begin(), mb.set.end());
    mb.b = m.at("b").get<int>();
    mb.bprime = m.at("bprime").get<int>();
    mb.degenerate = m.at("degenerate").get<bool>();
    t.members.push_back(std::move(mb));
  }
  std::string var = j.at("variant").get<std::string>();
  if (var == "finite") t.variant = NestedTree::Variant::Finite;
  else if (var == "infinity") t.variant = NestedTree::Variant::Infinity;
  else fail(Err::MalformedInput, "variant must be finite or infinity");
  return t;
}

namespace {

// The deterministic witness rule: smallest eligible label.
int pick_bprime(const NestedTree& t, const RawLayout& L, int i) {
  const auto& mb = t.members[i];
  if (mb.set.size() == 1) return mb.b;
  int best = -1;
  for (int s : L.sons[i])
    if (s != mb.b && (best < 0 || s < best)) best = s;
  for (int d : L.daughters[i]) {
    const auto& dm = t.members[d];
    if (!contains(dm.set, mb.b) && (best < 0 || dm.b < best)) best = dm.b;
  }
  require(best >= 0, Err::InvariantViolation, "no eligible bprime");
  return best;
}

// Random partition refinement: choose disjoint subsets of `pool` (sizes >= 2)
// as candidate child sets.
std::vector<std::vector<int>> random_subsets(Rng& rng, std::vector<int> pool,
                                             int max_children) {
  std::vector<std::vector<int>> out;
  // shuffle
  for (std::size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[rng.below(i)]);
  std::size_t pos = 0;
  while (static_cast<int>(out.size()) < max_children &&
         pos + 2 <= pool.size()) {
    std::size_t remaining = pool.size() - pos;
    if (remaining < 2) break;
    std::size_t k = 2 + rng.below(std::min<std::uint64_t>(remaining - 1, 3));
    if (k > remaining) k = remaining;
    if (rng.uniform() < 0.35) break;
    std::vector<int> part(pool.begin() + pos, pool.begin() + pos + k);
    std::sort(part.begin(), part.end());
    out.push_back(std::move(part));
    pos += k;
  }
  return out;
}

}  // namespace

NestedTree random_finite_tree(Rng& rng, int max_v, int max_depth) {
  require(max_v >= 2, Err::MalformedInput, "need at least 2 points");
  for (int attempt = 0; attempt < 200; ++attempt) {
    NestedTree t;
    t.variant = NestedTree::Variant::Finite;
    int nv = 2 + static_cast<int>(rng.below(max_v - 1));
    for (int v = 1; v <= nv; ++v) t.V.push_back(v);

    TreeMember root;
    root.set = t.V;
    t.members.push_back(root);

    // Breadth-first refinement up to the depth cap.
    std::vector<std::pair<int, int>> frontier{{0, 1}};  // (member index, depth)
    while (!frontier.empty()) {
      auto [mi, depth] = frontier.back();
      frontier.pop_back();
      if (depth >= max_depth) continue;
      auto subs = random_subsets(rng, t.members[mi].set, 2);
      for (auto& s : subs) {
        if (s.size() == t.members[mi].set.size()) continue;  // must be strict
        TreeMember mb;
        mb.set = std::move(s);
        t.members.push_back(mb);
        frontier.push_back({static_cast<int>(t.members.size()) - 1, depth + 1});
      }
    }

    // Basepoints top-down (largest first), honoring coherence.
    std::vector<int> order(t.members.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return t.members[a].set.size() > t.members[b].set.size();
    });
    RawLayout L = raw_layout(t);
    for (int i : order) {
      int p = L.parent[i];
      if (p >= 0 && contains(t.members[i].set, t.members[p].b))
        t.members[i].b = t.members[p].b;
      else
        t.members[i].b =
            t.members[i].set[rng.below(t.members[i].set.size())];
    }
    for (std::size_t i = 0; i < t.members.size(); ++i)
      t.members[i].bprime = pick_bprime(t, L, static_cast<int>(i));

    if (validate_tree(t).empty()) return t;
  }
  fail(Err::InvariantViolation, "finite tree sampling failed");
}

NestedTree random_infinity_tree(Rng& rng, int max_v, int max_sigma) {
  require(max_v >= 1, Err::MalformedInput, "need at least 1 point");
  for (int attempt = 0; attempt < 500; ++attempt) {
    NestedTree t;
    t.variant = NestedTree::Variant::Infinity;
    int nv = 1 + static_cast<int>(rng.below(max_v));
    for (int v = 1; v <= nv; ++v) t.V.push_back(v);
    int b = 1 + static_cast<int>(rng.below(nv));

    // Special chain: nested sets containing b, strictly shrinking.
    std::vector<std::vector<int>> chain_sets{t.V};
    while (static_cast<int>(chain_sets.size()) < max_sigma) {
      const auto& cur = chain_sets.back();
      if (cur.size() <= 1 || rng.uniform() < 0.4) break;
      std::vector<int> rest;
      for (int x : cur)
        if (x != b) rest.push_back(x);
      std::size_t keep = rng.below(rest.size());  // strictly smaller
      for (std::size_t i = rest.size(); i > 1; --i)
        std::swap(rest[i - 1], rest[rng.below(i)]);
      std::vector<int> next{b};
      for (std::size_t i = 0; i < keep; ++i) next.push_back(rest[i]);
      std::sort(next.begin(), next.end());
      chain_sets.push_back(std::move(next));
    }

    // Tail style: degenerate tail needs >= 2 elements.
    bool tail_degenerate =
        chain_sets.back().size() >= 2 && rng.uniform() < 0.4;

    for (std::size_t i = 0; i < chain_sets.size(); ++i) {
      TreeMember mb;
      mb.set = chain_sets[i];
      mb.degenerate = tail_degenerate && i + 1 == chain_sets.size();
      t.members.push_back(mb);
    }

    // Degenerate decorations: subsets of V(i) \ V(i+1) (so the walk is not
    // diverted), plus optional degenerate daughters inside a degenerate tail.
    std::size_t fixed = t.members.size();
    for (std::size_t i = 0; i + 1 < chain_sets.size(); ++i) {
      std::vector<int> pool;
      for (int x : chain_sets[i])
        if (!contains(chain_sets[i + 1], x)) pool.push_back(x);
      for (auto& s : random_subsets(rng, pool, 2)) {
        TreeMember mb;
        mb.set = std::move(s);
        mb.degenerate = true;
        t.members.push_back(mb);
      }
    }
    {
      // Children of the tail: avoid b for a non-degenerate tail (the walk must
      // stop there); inside a degenerate tail anything goes.
      const auto& tail = chain_sets.back();
      std::vector<int> pool;
      for (int x : tail)
        if (tail_degenerate || x != b) pool.push_back(x);
      for (auto& s : random_subsets(rng, pool, 2)) {
        if (s.size() == tail.size()) continue;
        TreeMember mb;
        mb.set = std::move(s);
        mb.degenerate = true;
        t.members.push_back(mb);
      }
    }
    // One optional deeper degenerate level.
    std::size_t first_level_end = t.members.size();
    for (std::size_t i = fixed; i < first_level_end; ++i) {
      if (t.members[i].set.size() < 4 || rng.uniform() < 0.5) continue;
      auto subs = random_subsets(rng, t.members[i].set, 1);
      for (auto& s : subs) {
        if (s.size() == t.members[i].set.size()) continue;
        TreeMember mb;
        mb.set = std::move(s);
        mb.degenerate = true;
        t.members.push_back(mb);
      }
    }

    // Basepoints: chain shares b; others top-down with coherence.
    RawLayout L = raw_layout(t);
    std::vector<int> order(t.members.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int c) {
      return t.members[a].set.size() > t.members[c].set.size();
    });
    for (int i : order) {
      if (contains(t.members[i].set, b)) {
        t.members[i].b = b;
        continue;
      }
      int p = L.parent[i];
      if (p >= 0 && contains(t.members[i].set, t.members[p].b))
        t.members[i].b = t.members[p].b;
      else
        t.members[i].b = t.members[i].set[rng.below(t.members[i].set.size())];
    }
    for (std::size_t i = 0; i < t.members.size(); ++i)
      t.members[i].bprime = pick_bprime(t, L, static_cast<int>(i));

    if (validate_tree(t).empty()) return t;
  }
  fail(Err::InvariantViolation, "infinity tree sampling failed");
}

}  // namespace zinv
