#include "zinv/charts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zinv/errors.hpp"

namespace zinv {

double vmap_norm(const VMap& w) {
  double s = 0;
  for (const auto& v : w) s += v.squaredNorm();
  return std::sqrt(s);
}

double vmap_dist(const VMap& a, const VMap& b) {
  require(a.size() == b.size(), Err::MalformedInput, "vmap size mismatch");
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, (a[i] - b[i]).norm());
  return d;
}

namespace {

constexpr double kTinyNorm = 1e-13;

struct Ctx {
  const NestedTree* t = nullptr;
  TreeLayout L;
  std::map<int, int> pos;  // vertex label -> position in t->V
  int root = -1;
  std::vector<int> by_size;  // member indices, smallest sets first

  int p(int label) const {
    auto it = pos.find(label);
    require(it != pos.end(), Err::UnknownVertex, "label not in V");
    return it->second;
  }
};

Ctx make_ctx(const NestedTree& t) {
  Ctx c;
  c.t = &t;
  c.L = layout_tree(t);
  for (std::size_t i = 0; i < t.V.size(); ++i) c.pos[t.V[i]] = static_cast<int>(i);
  c.root = t.member_index(t.V);
  c.by_size.resize(t.members.size());
  std::iota(c.by_size.begin(), c.by_size.end(), 0);
  std::sort(c.by_size.begin(), c.by_size.end(), [&](int a, int b) {
    return t.members[a].set.size() < t.members[b].set.size();
  });
  return c;
}

// Representative values of x at the children of member a: one entry per son
// (the value there) and one per daughter (the value at its basepoint).
std::vector<Vec3> collapse_children(const Ctx& c, int a, const VMap& x) {
  std::vector<Vec3> out;
  for (int s : c.L.sons[a]) out.push_back(x[c.p(s)]);
  for (int d : c.L.daughters[a]) out.push_back(x[c.p(c.t->members[d].b)]);
  return out;
}

// Expand child representatives back to a full map (constant on daughters).
VMap expand_children(const Ctx& c, int a, const std::vector<Vec3>& vals) {
  VMap out(c.t->V.size(), Vec3::Zero());
  std::size_t k = 0;
  for (int s : c.L.sons[a]) out[c.p(s)] = vals[k++];
  for (int d : c.L.daughters[a]) {
    for (int e : c.t->members[d].set) out[c.p(e)] = vals[k];
    ++k;
  }
  return out;
}

double min_pair_sep(const std::vector<Vec3>& vals) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      m = std::min(m, (vals[i] - vals[j]).norm());
  return m;
}

// Index (in collapse_children order) of the child holding b(A).
int b_child_index(const Ctx& c, int a) {
  const auto& t = *c.t;
  int k = 0;
  for (int s : c.L.sons[a]) {
    if (s == t.members[a].b) return k;
    ++k;
  }
  for (int d : c.L.daughters[a]) {
    if (std::binary_search(t.members[d].set.begin(), t.members[d].set.end(),
                           t.members[a].b))
      return k;
    ++k;
  }
  fail(Err::InvariantViolation, "basepoint not under a child");
}

// Collapse x over the children of a and recenter on the child holding the
// basepoint (a no-op on exact chart images, a projection on perturbed input),
// then normalize. The result lies in the direction space W_A.
VMap project_direction(const Ctx& c, int a, const VMap& x) {
  auto vals = collapse_children(c, a, x);
  Vec3 shift = vals[b_child_index(c, a)];
  for (auto& v : vals) v -= shift;
  VMap w1 = expand_children(c, a, vals);
  double n = vmap_norm(w1);
  require(n > kTinyNorm, Err::DegenerateDirection, "collapsed direction vanished");
  for (auto& v : w1) v /= n;
  return w1;
}

}  // namespace

std::vector<VMap> v_vectors(const ChartPoint& P, const NestedTree& t) {
  Ctx c = make_ctx(t);
  require(P.mu.size() == t.members.size() && P.w.size() == t.members.size(),
          Err::MalformedInput, "chart point does not match tree");
  std::vector<VMap> v(t.members.size(), VMap(t.V.size(), Vec3::Zero()));
  for (int a : c.by_size) {
    require(P.w[a].size() == t.V.size(), Err::MalformedInput, "bad w size");
    require(P.mu[a] >= 0, Err::MalformedInput, "negative scale");
    v[a] = P.w[a];
    for (int d : c.L.daughters[a])
      for (std::size_t i = 0; i < t.V.size(); ++i)
        v[a][i] += P.mu[d] * v[d][i];
    require(vmap_norm(v[a]) > kTinyNorm, Err::DegenerateScale,
            "v vector vanished");
  }
  return v;
}

ConfigPoint chart_xi(const ChartPoint& P, const NestedTree& t) {
  Ctx c = make_ctx(t);
  auto v = v_vectors(P, t);

  // Admissibility fences.
  for (std::size_t a = 0; a < t.members.size(); ++a) {
    double n = vmap_norm(v[a]);
    require(n >= kMinVNorm, Err::OutsideNeighborhood, "v vector below fence");
    auto vals = collapse_children(c, static_cast<int>(a), v[a]);
    for (auto& x : vals) x /= n;
    require(min_pair_sep(vals) >= kMinChildSep, Err::OutsideNeighborhood,
            "children of a member not separated");
  }

  ConfigPoint Q;
  Q.u.assign(t.members.size(), Vec3::Zero());
  Q.lambda.assign(t.members.size(), 0.0);
  Q.y.assign(t.members.size(), VMap(t.V.size(), Vec3::Zero()));
  double nV = vmap_norm(v[c.root]);
  for (std::size_t a = 0; a < t.members.size(); ++a) {
    int ai = static_cast<int>(a);
    Q.u[a] = P.u + (P.mu[c.root] / nV) * v[c.root][c.p(t.members[a].b)];
    double prod = 1.0;
    for (int d = ai; d >= 0; d = c.L.parent[d]) prod *= P.mu[d];
    double na = vmap_norm(v[a]);
    Q.lambda[a] = na * prod / nV;
    Q.y[a] = v[a];
    for (auto& x : Q.y[a]) x /= na;
  }
  return Q;
}

ChartPoint retraction_r(const ConfigPoint& Q, const NestedTree& t) {
  Ctx c = make_ctx(t);
  require(Q.u.size() == t.members.size() && Q.lambda.size() == t.members.size() &&
              Q.y.size() == t.members.size(),
          Err::MalformedInput, "config point does not match tree");

  ChartPoint P;
  P.u = Q.u[c.root];
  P.mu.assign(t.members.size(), 0.0);
  P.w.assign(t.members.size(), VMap(t.V.size(), Vec3::Zero()));

  // Directions first: collapse each y_A over the children of A.
  for (std::size_t a = 0; a < t.members.size(); ++a)
    P.w[a] = project_direction(c, static_cast<int>(a), Q.y[a]);

  // Scales: the top one is read off, the rest from the parent's direction data.
  P.mu[c.root] = Q.lambda[c.root];
  for (std::size_t a = 0; a < t.members.size(); ++a) {
    int ai = static_cast<int>(a);
    int pa = c.L.parent[ai];
    if (pa < 0) continue;
    const auto& A = t.members[a];
    const auto& PA = t.members[pa];
    Vec3 wA_bp = P.w[a][c.p(A.bprime)];
    Vec3 wP_bp = P.w[pa][c.p(PA.bprime)];
    Vec3 yP_bp = Q.y[pa][c.p(PA.bprime)];
    require(wA_bp.norm() > kTinyNorm && yP_bp.norm() > kTinyNorm,
            Err::DegenerateDirection, "witness direction vanished");
    Vec3 diff = Q.y[pa][c.p(A.bprime)] - Q.y[pa][c.p(A.b)];
    double mu = wP_bp.norm() * diff.dot(wA_bp) / (yP_bp.norm() * wA_bp.squaredNorm());
    P.mu[a] = std::max(0.0, mu);
  }
  return P;
}

VMap realized_map(const ConfigPoint& Q, const NestedTree& t) {
  Ctx c = make_ctx(t);
  VMap out(t.V.size(), Vec3::Zero());
  for (std::size_t i = 0; i < t.V.size(); ++i)
    out[i] = Q.u[c.root] + Q.lambda[c.root] * Q.y[c.root][i];
  return out;
}

double chart_distance(const ChartPoint& a, const ChartPoint& b) {
  require(a.mu.size() == b.mu.size() && a.w.size() == b.w.size(),
          Err::MalformedInput, "chart point shape mismatch");
  double d = (a.u - b.u).norm();
  for (std::size_t i = 0; i < a.mu.size(); ++i)
    d = std::max(d, std::abs(a.mu[i] - b.mu[i]));
  for (std::size_t i = 0; i < a.w.size(); ++i)
    d = std::max(d, vmap_dist(a.w[i], b.w[i]));
  return d;
}

// --- infinity variant ---

namespace {

struct InfCtx {
  Ctx c;
  std::vector<int> chain;      // member indices, V(1)..V(sigma)
  std::vector<int> chain_pos;  // member index -> chain position (1-based), 0 if none
  std::vector<char> degen;     // member index -> in tau_d

  int sigma() const { return static_cast<int>(chain.size()); }
};

InfCtx make_inf_ctx(const NestedTree& t) {
  require(t.variant == NestedTree::Variant::Infinity, Err::MalformedInput,
          "infinity-variant tree required");
  InfCtx ic;
  ic.c = make_ctx(t);
  ic.chain = ic.c.L.chain;
  ic.chain_pos.assign(t.members.size(), 0);
  for (std::size_t i = 0; i < ic.chain.size(); ++i)
    ic.chain_pos[ic.chain[i]] = static_cast<int>(i) + 1;
  ic.degen.assign(t.members.size(), 0);
  for (std::size_t i = 0; i < t.members.size(); ++i)
    ic.degen[i] = t.members[i].degenerate ? 1 : 0;
  return ic;
}

// The largest chain index whose set still contains A: the smallest special
// superset of A.
int special_index_of(const InfCtx& ic, int a) {
  const auto& t = *ic.c.t;
  int best = 1;
  for (int i = 0; i < ic.sigma(); ++i) {
    const auto& S = t.members[ic.chain[i]].set;
    if (std::includes(S.begin(), S.end(), t.members[a].set.begin(),
                      t.members[a].set.end()))
      best = i + 1;
  }
  return best;
}

struct InfScratch {
  std::map<int, VMap> wt;  // degenerate member -> w-tilde
  std::vector<VMap> st;    // chain position (0-based) -> s-tilde
  std::vector<double> lam; // chain position (0-based) -> lambda_i
};

InfScratch build_inf_scratch(const ChartPointInf& P, const InfCtx& ic) {
  const auto& t = *ic.c.t;
  const int sigma = ic.sigma();
  require(static_cast<int>(P.nu.size()) == sigma &&
              static_cast<int>(P.s.size()) == sigma,
          Err::MalformedInput, "chain data does not match tree");
  InfScratch sc;

  for (int a : ic.c.by_size) {
    if (!ic.degen[a]) continue;
    auto itw = P.w.find(a);
    auto itm = P.mu.find(a);
    require(itw != P.w.end() && itm != P.mu.end(), Err::MalformedInput,
            "degenerate member missing scale or direction");
    require(itm->second >= 0, Err::MalformedInput, "negative scale");
    require(itw->second.size() == t.V.size(), Err::MalformedInput, "bad w size");
    VMap wt = itw->second;
    for (int d : ic.c.L.daughters[a]) {
      double mu = P.mu.at(d);
      for (std::size_t i = 0; i < t.V.size(); ++i) wt[i] += mu * sc.wt.at(d)[i];
    }
    sc.wt[a] = std::move(wt);
  }

  sc.st.assign(sigma, VMap(t.V.size(), Vec3::Zero()));
  for (int i = sigma; i >= 1; --i) {
    int vi = ic.chain[i - 1];
    require(P.s[i - 1].size() == t.V.size(), Err::MalformedInput, "bad s size");
    VMap st = P.s[i - 1];
    for (int d : ic.c.L.daughters[vi]) {
      if (i < sigma && d == ic.chain[i]) {
        for (std::size_t k = 0; k < t.V.size(); ++k)
          st[k] += P.nu[i] * sc.st[i][k];
      } else {
        double mu = P.mu.at(d);
        for (std::size_t k = 0; k < t.V.size(); ++k)
          st[k] += mu * sc.wt.at(d)[k];
      }
    }
    // A degenerate tail also adds its own scaled direction.
    if (i == sigma && ic.degen[vi]) {
      double mu = P.mu.at(vi);
      for (std::size_t k = 0; k < t.V.size(); ++k)
        st[k] += mu * sc.wt.at(vi)[k];
    }
    sc.st[i - 1] = std::move(st);
  }

  sc.lam.assign(sigma, 0.0);
  double acc = 1.0;
  for (int i = 0; i < sigma; ++i) {
    require(P.nu[i] >= 0, Err::MalformedInput, "negative scale");
    acc *= P.nu[i];
    sc.lam[i] = acc;
  }
  return sc;
}

}  // namespace

ConfigPointInf chart_xi_infty(const ChartPointInf& P, const NestedTree& t) {
  InfCtx ic = make_inf_ctx(t);
  InfScratch sc = build_inf_scratch(P, ic);
  const int sigma = ic.sigma();

  ConfigPointInf Q;
  Q.ell_special.assign(sigma, 0.0);
  Q.S.assign(sigma, VMap());

  for (int i = 1; i <= sigma; ++i) {
    int vi = ic.chain[i - 1];
    if (ic.degen[vi]) continue;  // the tail's data lives in the 4-tuple below
    double n = vmap_norm(sc.st[i - 1]);
    require(n > kTinyNorm, Err::DegenerateScale, "s-tilde vanished");
    require(n >= kMinVNorm, Err::OutsideNeighborhood, "s-tilde below fence");
    Q.ell_special[i - 1] = sc.lam[i - 1] * n;
    VMap S = sc.st[i - 1];
    for (auto& x : S) x /= n;
    // Witness value must stay readable for the scale recovery.
    if (t.members[vi].set.size() >= 2)
      require(S[ic.c.p(t.members[vi].bprime)].norm() >= kMinChildSep,
              Err::OutsideNeighborhood, "special witness below fence");
    Q.S[i - 1] = std::move(S);
  }

  for (std::size_t a = 0; a < t.members.size(); ++a) {
    if (!ic.degen[a]) continue;
    int ai = static_cast<int>(a);
    int i = special_index_of(ic, ai);
    const auto& A = t.members[a];
    double rootA = std::sqrt(static_cast<double>(A.set.size()));
    Vec3 sb = sc.st[i - 1][ic.c.p(A.b)];
    require(rootA * sb.norm() >= kMinVNorm, Err::OutsideNeighborhood,
            "degenerate base direction below fence");
    double nw = vmap_norm(sc.wt.at(ai));
    require(nw >= kMinVNorm, Err::OutsideNeighborhood, "w-tilde below fence");

    double prod = 1.0;
    for (int d = ai; d >= 0; d = ic.c.L.parent[d]) {
      if (!ic.degen[d]) break;
      prod *= P.mu.at(d);
    }
    Q.ell[ai] = sc.lam[i - 1] * rootA * sb.norm();
    Q.u[ai] = sb / sb.norm();
    Q.m[ai] = prod * nw / (rootA * sb.norm());
    VMap v = sc.wt.at(ai);
    for (auto& x : v) x /= nw;
    auto vals = collapse_children(ic.c, ai, v);
    require(min_pair_sep(vals) >= kMinChildSep, Err::OutsideNeighborhood,
            "children of a degenerate member not separated");
    Q.v[ai] = std::move(v);
  }
  return Q;
}

ChartPointInf retraction_r_infty(const ConfigPointInf& Q, const NestedTree& t) {
  InfCtx ic = make_inf_ctx(t);
  const int sigma = ic.sigma();
  const auto& L = ic.c.L;

  ChartPointInf P;
  P.nu.assign(sigma, 0.0);
  P.s.assign(sigma, VMap(t.V.size(), Vec3::Zero()));

  // Directions of degenerate members.
  for (std::size_t a = 0; a < t.members.size(); ++a) {
    if (!ic.degen[a]) continue;
    int ai = static_cast<int>(a);
    auto itv = Q.v.find(ai);
    require(itv != Q.v.end() && itv->second.size() == t.V.size(),
            Err::MalformedInput, "degenerate member missing direction");
    P.w[ai] = project_direction(ic.c, ai, itv->second);
  }

  // Directions of specials.
  for (int i = 1; i <= sigma; ++i) {
    int vi = ic.chain[i - 1];
    const auto& A = t.members[vi];
    if (ic.degen[vi]) {
      // Degenerate tail: the base direction gives the constant map back
      // (normalized, so perturbed input projects onto the domain sphere).
      auto itu = Q.u.find(vi);
      require(itu != Q.u.end(), Err::MalformedInput, "tail missing base direction");
      double un = itu->second.norm();
      require(un > kTinyNorm, Err::DegenerateDirection, "base direction vanished");
      double rootA = std::sqrt(static_cast<double>(A.set.size()));
      VMap s(t.V.size(), Vec3::Zero());
      for (int e : A.set) s[ic.c.p(e)] = itu->second / (un * rootA);
      P.s[i - 1] = std::move(s);
      continue;
    }
    require(static_cast<int>(Q.S.size()) >= i &&
                Q.S[i - 1].size() == t.V.size(),
            Err::MalformedInput, "special missing direction");
    std::vector<Vec3> vals;
    std::vector<int> sons = L.sons[vi];
    VMap s1(t.V.size(), Vec3::Zero());
    for (int son : sons) s1[ic.c.p(son)] = Q.S[i - 1][ic.c.p(son)];
    for (int d : L.daughters[vi]) {
      if (i < sigma && d == ic.chain[i]) continue;  // s_i vanishes there
      Vec3 val = Q.S[i - 1][ic.c.p(t.members[d].b)];
      for (int e : t.members[d].set) s1[ic.c.p(e)] = val;
    }
    double n = vmap_norm(s1);
    require(n > kTinyNorm, Err::DegenerateDirection, "collapsed s vanished");
    for (auto& x : s1) x /= n;
    P.s[i - 1] = std::move(s1);
  }

  // Scales of degenerate members, bottom-up.
  for (int a : ic.c.by_size) {
    if (!ic.degen[a]) continue;
    const auto& A = t.members[a];
    if (ic.chain_pos[a] > 0) {
      // Degenerate tail: m = mu * ||w-tilde|| / (sqrt(#A) ||s(b)||) with
      // ||s(b)|| = 1/sqrt(#A), so mu = m / ||w-tilde||; w-tilde is rebuilt
      // from the inner scales recovered already (they sit below a in by_size).
      std::map<int, VMap> wts;
      for (int bi : ic.c.by_size) {
        if (!ic.degen[bi]) continue;
        if (!std::includes(A.set.begin(), A.set.end(),
                           t.members[bi].set.begin(), t.members[bi].set.end()))
          continue;
        VMap w = P.w.at(bi);
        for (int d : L.daughters[bi])
          for (std::size_t k = 0; k < t.V.size(); ++k)
            w[k] += P.mu.at(d) * wts.at(d)[k];
        wts[bi] = std::move(w);
      }
      double nw = vmap_norm(wts.at(a));
      require(nw > kTinyNorm, Err::DegenerateDirection, "w-tilde vanished");
      P.mu[a] = std::max(0.0, Q.m.at(a) / nw);
      continue;
    }
    int pa = L.parent[a];
    require(pa >= 0, Err::InvariantViolation, "degenerate member with no parent");
    Vec3 wA_bp = P.w.at(a)[ic.c.p(A.bprime)];
    require(wA_bp.norm() > kTinyNorm, Err::DegenerateDirection,
            "witness direction vanished");
    if (ic.degen[pa]) {
      const auto& PA = t.members[pa];
      const VMap& vP = Q.v.at(pa);
      Vec3 diff = vP[ic.c.p(A.bprime)] - vP[ic.c.p(A.b)];
      Vec3 wP_bp = P.w.at(pa)[ic.c.p(PA.bprime)];
      Vec3 vP_bp = vP[ic.c.p(PA.bprime)];
      require(vP_bp.norm() > kTinyNorm, Err::DegenerateDirection,
              "parent witness vanished");
      P.mu[a] = std::max(
          0.0, diff.dot(wA_bp) / wA_bp.squaredNorm() * wP_bp.norm() / vP_bp.norm());
    } else {
      int i = ic.chain_pos[pa];
      const auto& PA = t.members[pa];
      const VMap& Si = Q.S[i - 1];
      Vec3 diff = Si[ic.c.p(A.bprime)] - Si[ic.c.p(A.b)];
      Vec3 s_bp = P.s[i - 1][ic.c.p(PA.bprime)];
      Vec3 S_bp = Si[ic.c.p(PA.bprime)];
      require(S_bp.norm() > kTinyNorm, Err::DegenerateDirection,
              "parent witness vanished");
      P.mu[a] = std::max(
          0.0, diff.dot(wA_bp) / wA_bp.squaredNorm() * s_bp.norm() / S_bp.norm());
    }
  }

  // nu_i, top scale first.
  {
    int v1 = ic.chain[0];
    if (ic.degen[v1]) {
      P.nu[0] = std::max(0.0, Q.ell.at(v1));
    } else if (t.members[v1].set.size() == 1) {
      P.nu[0] = std::max(0.0, Q.ell_special[0]);
    } else {
      int bp = ic.c.p(t.members[v1].bprime);
      Vec3 S1 = Q.S[0][bp];
      Vec3 s1 = P.s[0][bp];
      require(s1.norm() > kTinyNorm, Err::DegenerateDirection, "witness vanished");
      P.nu[0] = std::max(0.0, Q.ell_special[0] * S1.dot(s1) / s1.squaredNorm());
    }
  }
  for (int i = 2; i <= sigma; ++i) {
    int vi = ic.chain[i - 1];
    int vprev = ic.chain[i - 2];
    const auto& prev = t.members[vprev];
    bool tail_special_case =
        (i == sigma) && (ic.degen[vi] || t.members[vi].set.size() == 1);
    int witness = tail_special_case ? t.members[vi].b : t.members[vi].bprime;
    Vec3 Sprev = Q.S[i - 2][ic.c.p(witness)];
    Vec3 si = P.s[i - 1][ic.c.p(witness)];
    Vec3 sprev_bp = P.s[i - 2][ic.c.p(prev.bprime)];
    Vec3 Sprev_bp = Q.S[i - 2][ic.c.p(prev.bprime)];
    require(si.norm() > kTinyNorm && Sprev_bp.norm() > kTinyNorm,
            Err::DegenerateDirection, "witness vanished");
    P.nu[i - 1] = std::max(
        0.0, Sprev.dot(si) / si.squaredNorm() * sprev_bp.norm() / Sprev_bp.norm());
  }
  return P;
}

VMap realized_map_infty(const ConfigPointInf& Q, const NestedTree& t) {
  ChartPointInf P = retraction_r_infty(Q, t);
  InfCtx ic = make_inf_ctx(t);
  InfScratch sc = build_inf_scratch(P, ic);
  VMap out = sc.st[0];
  for (auto& x : out) x *= sc.lam[0];
  return out;
}

double chart_distance_inf(const ChartPointInf& a, const ChartPointInf& b) {
  require(a.nu.size() == b.nu.size() && a.s.size() == b.s.size() &&
              a.mu.size() == b.mu.size() && a.w.size() == b.w.size(),
          Err::MalformedInput, "chart point shape mismatch");
  double d = 0;
  for (std::size_t i = 0; i < a.nu.size(); ++i)
    d = std::max(d, std::abs(a.nu[i] - b.nu[i]));
  for (std::size_t i = 0; i < a.s.size(); ++i)
    d = std::max(d, vmap_dist(a.s[i], b.s[i]));
  for (const auto& [k, v] : a.mu) {
    auto it = b.mu.find(k);
    require(it != b.mu.end(), Err::MalformedInput, "scale key mismatch");
    d = std::max(d, std::abs(v - it->second));
  }
  for (const auto& [k, v] : a.w) {
    auto it = b.w.find(k);
    require(it != b.w.end(), Err::MalformedInput, "direction key mismatch");
    d = std::max(d, vmap_dist(v, it->second));
  }
  return d;
}

// --- sampling ---

namespace {

Vec3 random_ball(Rng& rng, double radius) {
  while (true) {
    Vec3 v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (v.norm() <= 1.0 && v.norm() >= 0.2) return radius * v;
  }
}

// Unit direction map for member a: child representatives separated, zero at
// the child holding the basepoint, constant on daughters.
VMap sample_direction(Rng& rng, const Ctx& c, int a) {
  int nchild =
      static_cast<int>(c.L.sons[a].size() + c.L.daughters[a].size());
  for (int attempt = 0; attempt < 300; ++attempt) {
    std::vector<Vec3> vals(nchild);
    for (auto& v : vals) v = random_ball(rng, 1.0);
    // Recenter on the child carrying b(A).
    Vec3 shift = vals[b_child_index(c, a)];
    for (auto& v : vals) v -= shift;
    VMap w = expand_children(c, a, vals);
    double n = vmap_norm(w);
    if (n < 1e-6) continue;
    for (auto& x : w) x /= n;
    auto post = collapse_children(c, a, w);
    if (min_pair_sep(post) < 2.5 * kMinChildSep) continue;
    return w;
  }
  fail(Err::OutsideNeighborhood, "direction sampling failed");
}

double sample_scale(Rng& rng, bool allow_zero) {
  if (allow_zero && rng.uniform() < 0.3) return 0.0;
  return 0.05 + 0.15 * rng.uniform();
}

}  // namespace

FiniteSample sample_finite_instance(Rng& rng, int max_v, int max_depth,
                                    bool allow_zero_scales) {
  NestedTree t = random_finite_tree(rng, max_v, max_depth);
  Ctx c = make_ctx(t);
  for (int attempt = 0; attempt < 200; ++attempt) {
    ChartPoint P;
    P.u = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    P.mu.resize(t.members.size());
    P.w.resize(t.members.size());
    for (std::size_t a = 0; a < t.members.size(); ++a) {
      P.mu[a] = sample_scale(rng, allow_zero_scales);
      P.w[a] = sample_direction(rng, c, static_cast<int>(a));
    }
    try {
      chart_xi(P, t);
    } catch (const Error&) {
      continue;
    }
    return FiniteSample{std::move(t), std::move(P)};
  }
  fail(Err::OutsideNeighborhood, "finite instance sampling failed");
}

InfinitySample sample_infinity_instance(Rng& rng, int max_v, int max_sigma,
                                        bool allow_zero_scales) {
  NestedTree t = random_infinity_tree(rng, max_v, max_sigma);
  InfCtx ic = make_inf_ctx(t);
  const int sigma = ic.sigma();
  for (int attempt = 0; attempt < 200; ++attempt) {
    ChartPointInf P;
    P.nu.resize(sigma);
    P.s.assign(sigma, VMap(t.V.size(), Vec3::Zero()));
    for (int i = 0; i < sigma; ++i) {
      P.nu[i] = sample_scale(rng, allow_zero_scales);
      if (i == 0) P.nu[i] = std::max(P.nu[i], 0.05);  // keep the top scale live
    }
    for (std::size_t a = 0; a < t.members.size(); ++a) {
      if (!ic.degen[a]) continue;
      P.mu[static_cast<int>(a)] = sample_scale(rng, allow_zero_scales);
      P.w[static_cast<int>(a)] = sample_direction(rng, ic.c, static_cast<int>(a));
    }
    for (int i = 1; i <= sigma; ++i) {
      int vi = ic.chain[i - 1];
      const auto& A = t.members[vi];
      if (ic.degen[vi]) {
        // Constant map u / sqrt(#A).
        Vec3 u = random_ball(rng, 1.0).normalized();
        double rootA = std::sqrt(static_cast<double>(A.set.size()));
        for (int e : A.set) P.s[i - 1][ic.c.p(e)] = u / rootA;
        continue;
      }
      // Values at the children off the chain, zero on the chain daughter.
      bool ok = false;
      for (int attempt2 = 0; attempt2 < 300 && !ok; ++attempt2) {
        VMap s(t.V.size(), Vec3::Zero());
        std::vector<Vec3> vals;
        for (int son : ic.c.L.sons[vi]) {
          Vec3 v = random_ball(rng, 1.0);
          s[ic.c.p(son)] = v;
          vals.push_back(v);
        }
        for (int d : ic.c.L.daughters[vi]) {
          if (i < sigma && d == ic.chain[i]) continue;
          Vec3 v = random_ball(rng, 1.0);
          for (int e : t.members[d].set) s[ic.c.p(e)] = v;
          vals.push_back(v);
        }
        vals.push_back(Vec3::Zero());  // separation from the vanishing locus
        if (min_pair_sep(vals) < 2.5 * kMinChildSep) continue;
        double n = vmap_norm(s);
        if (n < 1e-6) continue;
        for (auto& x : s) x /= n;
        auto post = vals;
        for (auto& v : post) v /= n;
        if (min_pair_sep(post) < 2.0 * kMinChildSep) continue;
        P.s[i - 1] = std::move(s);
        ok = true;
      }
      if (!ok) break;
    }
    try {
      chart_xi_infty(P, t);
    } catch (const Error&) {
      continue;
    }
    return InfinitySample{std::move(t), std::move(P)};
  }
  fail(Err::OutsideNeighborhood, "infinity instance sampling failed");
}

}  // namespace zinv
