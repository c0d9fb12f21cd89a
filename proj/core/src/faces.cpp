#include "zinv/faces.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zinv {

namespace {

std::string set_to_string(const std::vector<int>& B) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (i) os << ",";
    os << B[i];
  }
  os << "}";
  return os.str();
}

}  // namespace

std::string FaceDescriptor::label(const std::vector<int>& V) const {
  bool full = B.size() == V.size();
  std::string body = full ? std::string("V") : set_to_string(B);
  switch (kind) {
    case FaceKind::InfinityB: return "F(inf;" + body + ")";
    case FaceKind::CollapseB: return "F(" + body + ")";
    case FaceKind::AnomalySlice: return "f(" + body + ")";
  }
  return "?";
}

std::vector<FaceDescriptor> enumerate_faces(const std::vector<int>& V, Ambient amb) {
  require(!V.empty(), Err::EmptyV, "face enumeration needs a nonempty vertex set");
  std::vector<int> sorted = V;
  std::sort(sorted.begin(), sorted.end());
  const int m = static_cast<int>(sorted.size());
  require(m <= 20, Err::MalformedInput, "vertex set too large to enumerate subsets");

  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> B;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) B.push_back(sorted[i]);
    subsets.push_back(std::move(B));
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });

  std::vector<FaceDescriptor> out;
  if (amb == Ambient::CV) {
    for (const auto& B : subsets) out.push_back({FaceKind::InfinityB, B});
    for (const auto& B : subsets)
      if (B.size() >= 2) out.push_back({FaceKind::CollapseB, B});
  } else {
    for (const auto& B : subsets)
      if (B.size() >= 2 && static_cast<int>(B.size()) < m)
        out.push_back({FaceKind::AnomalySlice, B});
  }
  return out;
}

std::string classification_name(Classification::Kind k) {
  switch (k) {
    case Classification::Kind::VanishesAtInfinity: return "VanishesAtInfinity";
    case Classification::Kind::VanishesDisconnected: return "VanishesDisconnected";
    case Classification::Kind::VanishesUnivalent: return "VanishesUnivalent";
    case Classification::Kind::CancelsBySigma: return "CancelsBySigma";
    case Classification::Kind::IHXFamily: return "IHXFamily";
    case Classification::Kind::AnomalyFaceFV: return "AnomalyFaceFV";
    case Classification::Kind::Unclassifiable: return "Unclassifiable";
  }
  return "?";
}

namespace {

// Edge labels (1-based) of Gamma_B: both endpoints in B.
std::vector<int> edges_within(const Labelled& g, const std::vector<int>& B) {
  std::set<int> bs(B.begin(), B.end());
  std::vector<int> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (bs.count(g.edges[e][0]) && bs.count(g.edges[e][1]))
      out.push_back(static_cast<int>(e) + 1);
  return out;
}

bool gamma_b_connected(const Labelled& g, const std::vector<int>& B,
                       const std::vector<int>& inner) {
  if (B.empty()) return true;
  std::set<int> bs(B.begin(), B.end());
  std::map<int, std::vector<int>> adj;
  for (int el : inner) {
    adj[g.edges[el - 1][0]].push_back(g.edges[el - 1][1]);
    adj[g.edges[el - 1][1]].push_back(g.edges[el - 1][0]);
  }
  std::set<int> seen{B[0]};
  std::vector<int> stack{B[0]};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen.count(w)) {
        seen.insert(w);
        stack.push_back(w);
      }
  }
  return seen.size() == B.size();
}

}  // namespace

Classification classify_face(const Labelled& g, const FaceDescriptor& f) {
  validate(g);
  Classification c;

  if (f.kind == FaceKind::InfinityB) {
    c.kind = Classification::Kind::VanishesAtInfinity;
    return c;
  }

  const std::vector<int>& B = f.B;
  std::vector<int> inner = edges_within(g, B);

  if (!gamma_b_connected(g, B, inner)) {
    c.kind = Classification::Kind::VanishesDisconnected;
    return c;
  }

  std::map<int, int> incident;  // vertex of B -> edge instances of Gamma_B
  for (int v : B) incident[v] = 0;
  for (int el : inner) {
    ++incident[g.edges[el - 1][0]];
    ++incident[g.edges[el - 1][1]];
  }

  if (B.size() >= 3)
    for (int v : B)
      if (incident[v] == 1) {
        c.kind = Classification::Kind::VanishesUnivalent;
        return c;
      }

  for (int v : B)  // B sorted: first hit is the smallest label
    if (incident[v] == 2) {
      c.kind = Classification::Kind::CancelsBySigma;
      c.v_m = v;
      return c;
    }

  if (B.size() == 2 && inner.size() == 1) {
    c.kind = Classification::Kind::IHXFamily;
    c.ell = inner[0];
    c.v_j = g.edges[inner[0] - 1][0];
    c.v_k = g.edges[inner[0] - 1][1];
    return c;
  }

  if (B.size() == 2 * static_cast<std::size_t>(g.n)) {
    c.kind = Classification::Kind::AnomalyFaceFV;
    return c;
  }

  c.kind = Classification::Kind::Unclassifiable;
  return c;
}

Labelled sigma_involution(const std::vector<int>& B, const Labelled& g) {
  FaceDescriptor f{FaceKind::CollapseB, B};
  Classification c = classify_face(g, f);
  require(c.kind == Classification::Kind::CancelsBySigma, Err::NotApplicable,
          "face does not cancel by sigma");

  std::vector<int> inner = edges_within(g, B);
  std::vector<int> at_vm;
  for (int el : inner) {
    if (g.edges[el - 1][0] == c.v_m) at_vm.push_back(el);
    if (g.edges[el - 1][1] == c.v_m) at_vm.push_back(el);
  }
  require(at_vm.size() == 2, Err::InvariantViolation, "v_m is not on exactly 2 edges");

  // Reverse the two edges at v_m and exchange their labels.
  Labelled out = g;
  int ei = at_vm[0], ej = at_vm[1];
  out.edges[ei - 1] = {g.edges[ej - 1][1], g.edges[ej - 1][0]};
  out.edges[ej - 1] = {g.edges[ei - 1][1], g.edges[ei - 1][0]};
  return out;
}

std::vector<Labelled> ihx_family(const Labelled& g, const std::vector<int>& B) {
  FaceDescriptor f{FaceKind::CollapseB, B};
  Classification c = classify_face(g, f);
  require(c.kind == Classification::Kind::IHXFamily, Err::NotApplicable,
          "face is not an IHX face");

  // The four half-edges at {v_j, v_k} other than ell, as (edge label, role).
  std::vector<std::pair<int, int>> legs;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (static_cast<int>(e) + 1 == c.ell) continue;
    for (int role = 0; role < 2; ++role) {
      int v = g.edges[e][role];
      if (v == c.v_j || v == c.v_k)
        legs.emplace_back(static_cast<int>(e) + 1, role);
    }
  }
  require(legs.size() == 4, Err::InvariantViolation, "IHX face needs 4 outer legs");
  std::sort(legs.begin(), legs.end());

  std::vector<Labelled> family;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Labelled m = g;
      for (int k = 0; k < 4; ++k) {
        int target = (k == i || k == j) ? c.v_j : c.v_k;
        m.edges[legs[k].first - 1][legs[k].second] = target;
      }
      family.push_back(std::move(m));
    }
  return family;
}

namespace {

std::string fingerprint(const std::vector<int>& B, std::vector<Labelled> fam) {
  std::sort(fam.begin(), fam.end());
  std::ostringstream os;
  os << set_to_string(B) << "|";
  for (const auto& m : fam) {
    for (const auto& e : m.edges) os << e[0] << "," << e[1] << ";";
    os << "|";
  }
  return os.str();
}

}  // namespace

CancellationReport boundary_cancellation_check(int n) {
  CancellationReport rep;
  rep.degree = n;

  std::vector<int> V;
  for (int v = 1; v <= 2 * n; ++v) V.push_back(v);
  if (V.empty()) {
    rep.gaps.push_back("degree 0 has no faces to check");
    return rep;
  }
  auto faces = enumerate_faces(V, Ambient::CV);
  auto en = enumerate_labelled(n);

  std::set<std::string> ihx_seen;
  std::set<std::string> survivor_labels;
  auto note_gap = [&](const std::string& msg) {
    if (rep.gaps.size() < 32) rep.gaps.push_back(msg);
  };

  for (const Labelled& g : en) {
    for (const FaceDescriptor& f : faces) {
      Classification c = classify_face(g, f);
      ++rep.by_class[classification_name(c.kind)];
      ++rep.faces_total;

      try {
      switch (c.kind) {
        case Classification::Kind::CancelsBySigma: {
          Labelled p = sigma_involution(f.B, g);
          if (sigma_involution(f.B, p) != g)
            note_gap("sigma not involutive at " + f.label(V));
          Classification cp = classify_face(p, f);
          if (cp.kind != Classification::Kind::CancelsBySigma || cp.v_m != c.v_m)
            note_gap("sigma partner classified differently at " + f.label(V));
          if (class_of_labelled(p) != class_of_labelled(g))
            note_gap("sigma partner in a different class at " + f.label(V));
          if (p == g) {
            ++rep.sigma_fixed;
          } else if (g.edges < p.edges) {
            ++rep.sigma_pairs;
          }
          if (f.B.size() == 2) ++rep.sigma_on_parallel_pair;
          break;
        }
        case Classification::Kind::IHXFamily: {
          auto fam = ihx_family(g, f.B);
          if (fam.size() != 6) {
            note_gap("IHX family size " + std::to_string(fam.size()) + " at " +
                     f.label(V));
            break;
          }
          std::string fp = fingerprint(f.B, fam);
          if (ihx_seen.insert(fp).second) {
            ++rep.ihx_groups;
            bool member = false;
            AlgebraElement sum = zero_element(std::max(2, n));
            for (const auto& m : fam) {
              if (m == g) member = true;
              validate(m);
              sum = add(sum, class_of_labelled(m));
            }
            if (!member) note_gap("diagram missing from its own IHX family");
            if (!sum.is_zero())
              note_gap("IHX family does not sum to zero at " + f.label(V));
          }
          break;
        }
        case Classification::Kind::AnomalyFaceFV:
          survivor_labels.insert(f.label(V));
          break;
        case Classification::Kind::Unclassifiable:
          survivor_labels.insert(f.label(V));
          note_gap("unclassifiable face " + f.label(V));
          break;
        default:
          break;
      }
      } catch (const Error& e) {
        note_gap(std::string("verification error at ") + f.label(V) + ": " +
                 e.what());
      }
    }
  }

  rep.survivors.assign(survivor_labels.begin(), survivor_labels.end());
  if (rep.survivors != std::vector<std::string>{"F(V)"})
    note_gap("survivors are not exactly {F(V)}");
  return rep;
}

nlohmann::json cancellation_report_to_json(const CancellationReport& r) {
  nlohmann::json j;
  j["degree"] = r.degree;
  j["faces_total"] = r.faces_total;
  j["by_class"] = nlohmann::json::object();
  for (const auto& [k, v] : r.by_class) j["by_class"][k] = v;
  j["ihx_groups"] = r.ihx_groups;
  j["sigma_pairs"] = r.sigma_pairs;
  j["sigma_fixed"] = r.sigma_fixed;
  j["sigma_on_parallel_pair"] = r.sigma_on_parallel_pair;
  j["survivors"] = r.survivors;
  j["gaps"] = r.gaps;
  j["pass"] = r.pass();
  return j;
}

}  // namespace zinv
