// zinv: command line front end. One binary, subcommand routing, JSON or CSV
// reports. Identical config and seed give byte-identical reports; all
// randomness flows through zinv::Rng seeded from --seed.
//
// Exit codes: 0 success, 1 usage or input error, 2 check failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "zinv/algebra.hpp"
#include "zinv/charts.hpp"
#include "zinv/diagram.hpp"
#include "zinv/errors.hpp"
#include "zinv/faces.hpp"
#include "zinv/framing.hpp"
#include "zinv/labelled.hpp"
#include "zinv/linking.hpp"
#include "zinv/map_degree.hpp"
#include "zinv/propagator.hpp"
#include "zinv/quat.hpp"
#include "zinv/rng.hpp"
#include "zinv/trees.hpp"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "0.1.0";

// 0 = success, 2 = a check subcommand found a failure. Usage/input errors are
// signaled by exceptions and mapped to 1 in main.
int g_status = 0;

std::string g_output_path;
std::string g_format = "json";

json envelope(const std::string& subcommand, json config) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "zinv";
  j["version"] = kToolVersion;
  j["subcommand"] = subcommand;
  j["config"] = std::move(config);
  return j;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& cells) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, cells);
  } else if (j.is_string()) {
    cells.emplace_back(prefix, j.get<std::string>());
  } else {
    cells.emplace_back(prefix, j.dump());
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// CSV rendering: one header row of dotted key paths, one value row. Arrays and
// nested non-scalar values are serialized as JSON in their cell.
std::string to_csv(const json& j) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(j, "", cells);
  std::string head, vals;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      head += ',';
      vals += ',';
    }
    head += csv_quote(cells[i].first);
    vals += csv_quote(cells[i].second);
  }
  return head + "\n" + vals + "\n";
}

void emit(const json& report) {
  std::string text = g_format == "csv" ? to_csv(report) : report.dump(2) + "\n";
  if (g_output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g_output_path, std::ios::binary);
    zinv::require(out.good(), zinv::Err::MalformedInput,
                  "cannot open output file " + g_output_path);
    out << text;
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  zinv::require(in.good(), zinv::Err::MalformedInput,
                "cannot open input file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    zinv::fail(zinv::Err::MalformedInput,
               "bad JSON in " + path + ": " + e.what());
  }
  return j;
}

std::string face_kind_name(zinv::FaceKind k) {
  switch (k) {
    case zinv::FaceKind::InfinityB: return "infinity";
    case zinv::FaceKind::CollapseB: return "collapse";
    case zinv::FaceKind::AnomalySlice: return "anomaly_slice";
  }
  return "?";
}

zinv::Graph named_graph(const std::string& name) {
  if (name == "theta") return zinv::theta_graph();
  if (name == "k4") return zinv::k4_graph();
  if (name == "ladder") return zinv::ladder_graph();
  zinv::fail(zinv::Err::MalformedInput,
             "unknown diagram name '" + name + "' (theta, k4, ladder)");
}

long long round_to_integer(double x) { return std::llround(x); }

double integer_confidence(double estimate) {
  double gap = std::abs(estimate - static_cast<double>(std::llround(estimate)));
  return std::max(0.0, 1.0 - 2.0 * gap);
}

// ---------------------------------------------------------------- diagrams --

void run_diagrams_gen(int degree, bool include_disconnected) {
  json cfg{{"degree", degree}, {"connected_only", !include_disconnected}};
  json rep = envelope("diagrams gen", cfg);
  auto graphs = zinv::generate_diagrams(degree, !include_disconnected);
  rep["degree"] = degree;
  rep["count"] = graphs.size();
  json list = json::array();
  for (const auto& g : graphs)
    list.push_back(zinv::diagram_to_json(zinv::from_graph(g)));
  rep["diagrams"] = list;
  emit(rep);
}

void run_diagrams_aut(const std::string& name, const std::string& input) {
  json cfg{{"name", name}, {"input", input}};
  json rep = envelope("diagrams aut", cfg);
  zinv::Graph g;
  if (!input.empty()) {
    g = zinv::to_graph(zinv::parse_diagram(load_json_file(input)));
  } else {
    g = named_graph(name);
  }
  rep["degree"] = g.nv / 2;
  rep["aut"] = zinv::count_automorphisms(g);
  emit(rep);
}

void run_diagrams_labelled(int degree) {
  json cfg{{"degree", degree}};
  json rep = envelope("diagrams labelled", cfg);
  rep["degree"] = degree;
  rep["closed_form"] = zinv::count_labelled(degree);
  if (degree <= 2) {
    auto all = zinv::enumerate_labelled(degree);
    rep["enumerated"] = all.size();
    bool agree = all.size() == zinv::count_labelled(degree);
    rep["agree"] = agree;
    if (!agree) g_status = 2;
  }
  emit(rep);
}

// ----------------------------------------------------------------- algebra --

void run_algebra_dim(int degree) {
  json cfg{{"degree", degree}};
  json rep = envelope("algebra dim", cfg);
  const auto& rs = zinv::relation_set(degree);
  rep["degree"] = degree;
  rep["dim"] = zinv::dim_A_n(degree);
  rep["generators"] = rs.gens.size();
  rep["relations"] = rs.rows.size();
  emit(rep);
}

void run_algebra_reduce(const std::string& input) {
  json cfg{{"input", input}};
  json rep = envelope("algebra reduce", cfg);
  auto x = zinv::element_from_json(load_json_file(input));
  auto r = zinv::reduce(x);
  rep["element"] = zinv::element_to_json(r);
  rep["is_zero"] = r.is_zero();
  emit(rep);
}

void run_algebra_exp(const std::string& input) {
  json cfg{{"input", input}};
  json rep = envelope("algebra exp", cfg);
  auto x = zinv::element_from_json(load_json_file(input));
  rep["element"] = zinv::element_to_json(zinv::exp_truncated(x));
  emit(rep);
}

// ------------------------------------------------------------------- faces --

void run_faces_enumerate(int degree, const std::string& ambient) {
  json cfg{{"degree", degree}, {"ambient", ambient}};
  json rep = envelope("faces enumerate", cfg);
  std::vector<int> V(2 * degree);
  for (int i = 0; i < 2 * degree; ++i) V[i] = i + 1;
  auto amb = ambient == "sv" ? zinv::Ambient::SV : zinv::Ambient::CV;
  auto faces = zinv::enumerate_faces(V, amb);
  rep["degree"] = degree;
  rep["V"] = V;
  rep["count"] = faces.size();
  json list = json::array();
  for (const auto& f : faces) {
    json fj;
    fj["kind"] = face_kind_name(f.kind);
    fj["B"] = f.B;
    fj["label"] = f.label(V);
    list.push_back(fj);
  }
  rep["faces"] = list;
  emit(rep);
}

void run_faces_check(int degree) {
  json cfg{{"degree", degree}};
  json rep = envelope("faces check", cfg);
  auto report = zinv::boundary_cancellation_check(degree);
  json body = zinv::cancellation_report_to_json(report);
  for (const auto& [k, v] : body.items()) rep[k] = v;
  rep["pass"] = report.pass();
  if (!report.pass()) g_status = 2;
  emit(rep);
}

// ------------------------------------------------------------------ charts --

void run_charts_roundtrip(std::uint64_t seed, int instances,
                          const std::string& variant, int max_v, int max_depth,
                          int max_sigma, bool no_zero_scales, double tol) {
  json cfg{{"seed", seed},       {"instances", instances},
           {"variant", variant}, {"max_v", max_v},
           {"max_depth", max_depth}, {"max_sigma", max_sigma},
           {"allow_zero_scales", !no_zero_scales}, {"tolerance", tol}};
  json rep = envelope("charts roundtrip", cfg);
  zinv::Rng rng(seed);
  double max_residual = 0;
  int zero_scale = 0;
  for (int i = 0; i < instances; ++i) {
    if (variant == "finite") {
      auto s = zinv::sample_finite_instance(rng, max_v, max_depth,
                                            !no_zero_scales);
      bool has_zero = false;
      for (double m : s.point.mu) has_zero = has_zero || m == 0.0;
      zero_scale += has_zero ? 1 : 0;
      auto q = zinv::chart_xi(s.point, s.tree);
      auto back = zinv::retraction_r(q, s.tree);
      max_residual = std::max(max_residual, zinv::chart_distance(s.point, back));
    } else {
      auto s = zinv::sample_infinity_instance(rng, max_v, max_sigma,
                                              !no_zero_scales);
      bool has_zero = false;
      for (const auto& [idx, m] : s.point.mu) {
        (void)idx;
        has_zero = has_zero || m == 0.0;
      }
      zero_scale += has_zero ? 1 : 0;
      auto q = zinv::chart_xi_infty(s.point, s.tree);
      auto back = zinv::retraction_r_infty(q, s.tree);
      max_residual =
          std::max(max_residual, zinv::chart_distance_inf(s.point, back));
    }
  }
  rep["variant"] = variant;
  rep["instances"] = instances;
  rep["zero_scale_instances"] = zero_scale;
  rep["max_residual"] = max_residual;
  rep["tolerance"] = tol;
  bool pass = max_residual < tol;
  rep["pass"] = pass;
  if (!pass) g_status = 2;
  emit(rep);
}

// -------------------------------------------------------------------- geom --

void run_geom_degree(const std::string& map, std::uint64_t samples,
                     std::uint64_t seed) {
  json cfg{{"map", map}, {"samples", samples}, {"seed", seed}};
  json rep = envelope("geom degree", cfg);
  zinv::DegreeEstimate est;
  if (map == "rho") {
    est = zinv::map_degree_so3(
        [](const zinv::Vec4& p) {
          return zinv::rho({p[0], p[1], p[2], p[3]});
        },
        samples, seed);
  } else if (map == "rho-square") {
    est = zinv::map_degree_so3(
        [](const zinv::Vec4& p) {
          zinv::Quat q{p[0], p[1], p[2], p[3]};
          return zinv::rho(zinv::qmul(q, q));
        },
        samples, seed);
  } else if (map == "identity") {
    est = zinv::map_degree_s3([](const zinv::Vec4& p) { return p; }, samples,
                              seed);
  } else if (map == "conjugation") {
    est = zinv::map_degree_s3(
        [](const zinv::Vec4& p) {
          return zinv::Vec4(p[0], -p[1], -p[2], -p[3]);
        },
        samples, seed);
  } else {
    zinv::fail(zinv::Err::MalformedInput,
               "unknown map '" + map +
                   "' (rho, rho-square, identity, conjugation)");
  }
  rep["map"] = map;
  rep["samples"] = est.samples;
  rep["singular"] = est.singular;
  rep["estimate"] = est.estimate;
  rep["stderr"] = est.stderr_;
  rep["integer"] = round_to_integer(est.estimate);
  rep["confidence"] = integer_confidence(est.estimate);
  emit(rep);
}

void run_geom_linking(const std::string& link, int nodes, std::uint64_t seed,
                      bool seed_given) {
  json cfg{{"link", link}, {"nodes", nodes}};
  if (seed_given) cfg["seed"] = seed;
  json rep = envelope("geom linking", cfg);
  zinv::Curve k1, k2;
  if (link == "hopf") {
    auto pair = zinv::hopf_pair();
    k1 = pair.first;
    k2 = pair.second;
  } else {
    json j = load_json_file(link);
    zinv::require(j.is_object() && j.contains("components") &&
                      j.at("components").is_array() &&
                      j.at("components").size() == 2,
                  zinv::Err::MalformedInput,
                  "link file needs components: [curve, curve]");
    k1 = zinv::curve_from_json(j.at("components")[0]);
    k2 = zinv::curve_from_json(j.at("components")[1]);
  }
  auto res = zinv::gauss_linking(k1, k2, nodes);
  rep["link"] = link;
  rep["nodes"] = nodes;
  rep["estimate"] = res.estimate;
  rep["stderr"] = res.stderr_;
  rep["integer"] = res.integer;
  rep["confidence"] = res.confidence;
  if (seed_given) {
    zinv::Rng rng(seed);
    long long oracle = zinv::crossing_number_oracle(k1, k2, rng);
    rep["oracle"] = oracle;
    bool agree = oracle == res.integer;
    rep["oracle_agrees"] = agree;
    if (!agree) g_status = 2;
  }
  emit(rep);
}

void run_geom_g3check(std::uint64_t samples, std::uint64_t seed) {
  json cfg{{"samples", samples}, {"seed", seed}};
  json rep = envelope("geom g3check", cfg);
  zinv::Rng rng(seed);
  double worst_inverse = 0, worst_plain = 0, worst_stereo = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto q = zinv::random_unit_quat(rng);
    worst_inverse = std::max(worst_inverse, zinv::g3_residual_conj_inverse(q));
    worst_plain = std::max(worst_plain, zinv::g3_residual_conj_plain(q));
    // A point of S^2 with h != -1, fed through the displayed sphere action.
    double a = rng.normal(), b = rng.normal(), c = rng.normal();
    double n = std::sqrt(a * a + b * b + c * c);
    if (n < 1e-6 || c / n < -0.9) {
      --i;
      continue;
    }
    std::complex<double> z(a / n, b / n);
    double h = c / n;
    std::complex<double> z2;
    double h2;
    zinv::g3_stereo_action(q, z, h, z2, h2);
    double r = (zinv::g3(q) * zinv::stereo_point(z, h) -
                zinv::stereo_point(z2, h2))
                   .norm();
    worst_stereo = std::max(worst_stereo, r);
  }
  const double tol = 1e-12;
  rep["samples"] = samples;
  rep["residual_conj_inverse"] = worst_inverse;
  rep["residual_conj_plain"] = worst_plain;
  rep["residual_stereo"] = worst_stereo;
  rep["resolved_conjugator"] = "P13 rho(q)^{-1} P13^{-1}";
  rep["tolerance"] = tol;
  bool pass = worst_inverse < tol && worst_stereo < tol;
  rep["pass"] = pass;
  if (!pass) g_status = 2;
  emit(rep);
}

void run_geom_cmrcheck(std::uint64_t samples, std::uint64_t seed) {
  json cfg{{"samples", samples}, {"seed", seed}};
  json rep = envelope("geom cmrcheck", cfg);
  zinv::Rng rng(seed);
  double worst_block = 0, worst_closed = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto q = zinv::random_unit_quat(rng);
    worst_block = std::max(worst_block, zinv::cmr_block_residual(q));
    double r = (zinv::rho(q) - zinv::rho_closed_form(q))
                   .cwiseAbs()
                   .maxCoeff();
    worst_closed = std::max(worst_closed, r);
  }
  const double tol = 1e-12;
  rep["samples"] = samples;
  rep["residual_block"] = worst_block;
  rep["residual_rho_closed_form"] = worst_closed;
  rep["tolerance"] = tol;
  bool pass = worst_block < tol && worst_closed < tol;
  rep["pass"] = pass;
  if (!pass) g_status = 2;
  emit(rep);
}

void run_geom_propagator() {
  json rep = envelope("geom propagator", json::object());
  auto r = zinv::propagator_limit_check();
  rep["diagonal_residual"] = r.diagonal_residual;
  rep["infinity_residual"] = r.infinity_residual;
  rep["double_infinity_residual"] = r.double_infinity_residual;
  rep["sequence_points"] = r.sequence_points;
  rep["tolerance"] = zinv::kPropagatorLimitTol;
  rep["pass"] = r.pass;
  if (!r.pass) g_status = 2;
  emit(rep);
}

// --------------------------------------------------------------- invariant --

void run_invariant_frame(const std::string& input, long long p1,
                         bool p1_given, int bound) {
  json cfg{{"input", input}, {"bound", bound}};
  if (p1_given) cfg["p1"] = p1;
  json rep = envelope("invariant frame", cfg);
  zinv::FramedSeries fs;
  if (!input.empty()) {
    fs = zinv::framed_from_json(load_json_file(input));
  } else {
    // Demo input: the unit series for a trivialization with p1 = 4.
    fs.z = zinv::empty_diagram_element(bound);
    fs.p1 = 4;
    fs.z_sphere = true;
  }
  if (p1_given) fs.p1 = p1;
  auto xi = zinv::xi_standard(fs.z.bound);
  auto corrected = zinv::framing_correct(fs, xi);
  rep["p1"] = fs.p1;
  rep["z_sphere"] = fs.z_sphere;
  rep["xi"] = zinv::element_to_json(xi);
  rep["input_series"] = zinv::element_to_json(fs.z);
  rep["corrected"] = zinv::element_to_json(corrected);
  emit(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Jacobi diagram algebra, boundary-face cancellation, configuration "
      "space charts, and the geometric constants behind them"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output", g_output_path, "write the report to this file");
  app.add_option("--format", g_format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  // diagrams
  auto* diagrams = app.add_subcommand("diagrams", "trivalent diagram tools");
  diagrams->require_subcommand(1);
  diagrams->fallthrough();

  auto* dgen = diagrams->add_subcommand("gen", "generate diagrams up to iso");
  int dgen_degree = 1;
  bool dgen_all = false;
  dgen->add_option("--degree", dgen_degree, "diagram degree")->required();
  dgen->add_flag("--all", dgen_all, "include disconnected diagrams");
  dgen->callback([&] { run_diagrams_gen(dgen_degree, dgen_all); });

  auto* daut = diagrams->add_subcommand("aut", "automorphism count");
  std::string daut_name = "theta", daut_input;
  daut->add_option("--name", daut_name, "named diagram: theta, k4, ladder");
  daut->add_option("--input", daut_input, "diagram JSON file");
  daut->callback([&] { run_diagrams_aut(daut_name, daut_input); });

  auto* dlab = diagrams->add_subcommand(
      "labelled", "labelled census: enumeration vs closed form");
  int dlab_degree = 1;
  dlab->add_option("--degree", dlab_degree, "diagram degree")->required();
  dlab->callback([&] { run_diagrams_labelled(dlab_degree); });

  // algebra
  auto* algebra = app.add_subcommand("algebra", "diagram algebra tools");
  algebra->require_subcommand(1);
  algebra->fallthrough();

  auto* adim = algebra->add_subcommand("dim", "dimension of the degree part");
  int adim_degree = 0;
  adim->add_option("--degree", adim_degree, "degree")->required();
  adim->callback([&] { run_algebra_dim(adim_degree); });

  auto* ared = algebra->add_subcommand("reduce", "normal form of an element");
  std::string ared_input;
  ared->add_option("--input", ared_input, "element JSON file")->required();
  ared->callback([&] { run_algebra_reduce(ared_input); });

  auto* aexp = algebra->add_subcommand("exp", "truncated exponential");
  std::string aexp_input;
  aexp->add_option("--input", aexp_input, "element JSON file")->required();
  aexp->callback([&] { run_algebra_exp(aexp_input); });

  // faces
  auto* faces = app.add_subcommand("faces", "boundary face tools");
  faces->require_subcommand(1);
  faces->fallthrough();

  auto* fenum = faces->add_subcommand("enumerate", "codimension-one faces");
  int fenum_degree = 1;
  std::string fenum_ambient = "cv";
  fenum->add_option("--degree", fenum_degree, "diagram degree")->required();
  fenum->add_option("--ambient", fenum_ambient, "ambient space")
      ->check(CLI::IsMember({"cv", "sv"}));
  fenum->callback([&] { run_faces_enumerate(fenum_degree, fenum_ambient); });

  auto* fcheck = faces->add_subcommand(
      "check", "exhaustive boundary-face cancellation sweep");
  int fcheck_degree = 1;
  fcheck->add_option("--degree", fcheck_degree, "diagram degree")->required();
  fcheck->callback([&] { run_faces_check(fcheck_degree); });

  // charts
  auto* charts = app.add_subcommand("charts", "configuration space charts");
  charts->require_subcommand(1);
  charts->fallthrough();

  auto* crt = charts->add_subcommand("roundtrip",
                                     "max ||r(xi(P)) - P|| over random instances");
  std::uint64_t crt_seed = 0;
  int crt_instances = 100, crt_max_v = 5, crt_max_depth = 3, crt_max_sigma = 2;
  std::string crt_variant;
  bool crt_nozero = false;
  double crt_tol = 1e-9;
  crt->add_option("--seed", crt_seed, "random seed")->required();
  crt->add_option("--instances", crt_instances, "instance count");
  crt->add_option("--variant", crt_variant, "chart variant")
      ->required()
      ->check(CLI::IsMember({"finite", "infinity"}));
  crt->add_option("--max-v", crt_max_v, "max point labels");
  crt->add_option("--max-depth", crt_max_depth, "max nesting depth (finite)");
  crt->add_option("--max-sigma", crt_max_sigma, "max chain length (infinity)");
  crt->add_flag("--no-zero-scales", crt_nozero,
                "sample interior points only");
  crt->add_option("--tolerance", crt_tol, "pass threshold on the residual");
  crt->callback([&] {
    run_charts_roundtrip(crt_seed, crt_instances, crt_variant, crt_max_v,
                         crt_max_depth, crt_max_sigma, crt_nozero, crt_tol);
  });

  // geom
  auto* geom = app.add_subcommand("geom", "numeric geometry checks");
  geom->require_subcommand(1);
  geom->fallthrough();

  auto* gdeg = geom->add_subcommand("degree", "Monte Carlo mapping degree");
  std::string gdeg_map = "rho";
  std::uint64_t gdeg_samples = 100000, gdeg_seed = 0;
  gdeg->add_option("--map", gdeg_map,
                   "rho, rho-square, identity, conjugation");
  gdeg->add_option("--samples", gdeg_samples, "sample count");
  gdeg->add_option("--seed", gdeg_seed, "random seed")->required();
  gdeg->callback([&] { run_geom_degree(gdeg_map, gdeg_samples, gdeg_seed); });

  auto* glink = geom->add_subcommand("linking", "Gauss linking integral");
  std::string glink_link = "hopf";
  int glink_nodes = 256;
  std::uint64_t glink_seed = 0;
  auto* glink_seed_opt =
      glink->add_option("--seed", glink_seed,
                        "run the crossing oracle with this seed");
  glink->add_option("--link", glink_link, "hopf or a link JSON file");
  glink->add_option("--nodes", glink_nodes, "quadrature nodes per curve");
  glink->callback([&] {
    run_geom_linking(glink_link, glink_nodes, glink_seed,
                     glink_seed_opt->count() > 0);
  });

  auto* gg3 = geom->add_subcommand("g3check", "gluing rotation identities");
  std::uint64_t gg3_samples = 1000, gg3_seed = 0;
  gg3->add_option("--samples", gg3_samples, "sample count");
  gg3->add_option("--seed", gg3_seed, "random seed")->required();
  gg3->callback([&] { run_geom_g3check(gg3_samples, gg3_seed); });

  auto* gcmr = geom->add_subcommand(
      "cmrcheck", "right multiplication block decomposition");
  std::uint64_t gcmr_samples = 1000, gcmr_seed = 0;
  gcmr->add_option("--samples", gcmr_samples, "sample count");
  gcmr->add_option("--seed", gcmr_seed, "random seed")->required();
  gcmr->callback([&] { run_geom_cmrcheck(gcmr_samples, gcmr_seed); });

  auto* gprop = geom->add_subcommand(
      "propagator", "boundary extension limits of the direction map");
  gprop->callback([&] { run_geom_propagator(); });

  // invariant
  auto* invariant = app.add_subcommand("invariant", "framed series tools");
  invariant->require_subcommand(1);
  invariant->fallthrough();

  auto* iframe = invariant->add_subcommand(
      "frame", "apply the framing correction exp((p1/4) xi)");
  std::string iframe_input;
  long long iframe_p1 = 4;
  int iframe_bound = 2;
  auto* iframe_p1_opt =
      iframe->add_option("--p1", iframe_p1, "override the Pontryagin number");
  iframe->add_option("--input", iframe_input, "framed series JSON file");
  iframe->add_option("--bound", iframe_bound, "series bound for the demo input");
  iframe->callback([&] {
    run_invariant_frame(iframe_input, iframe_p1, iframe_p1_opt->count() > 0,
                        iframe_bound);
  });

  // Let --output / --format appear after any leaf subcommand.
  for (CLI::App* group : {diagrams, algebra, faces, charts, geom, invariant})
    for (CLI::App* leaf : group->get_subcommands(nullptr)) leaf->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const zinv::Error& e) {
    json err{{"error", std::string(zinv::err_name(e.code()))},
             {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", "InternalError"}, {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
  return g_status;
}
