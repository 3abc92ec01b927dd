#include "kproj/commands.hpp"

#include <charconv>
#include <random>

namespace kproj::cli {

using doc::Document;
using doc::Json;
using doc::encode;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const Document& input(const std::vector<Document>& in, std::size_t k, const std::string& type,
                      const std::string& cmd) {
  if (in.size() <= k) throw UsageError(cmd + ": expected a " + type + " document as input " + std::to_string(k + 1));
  if (in[k].type() != type)
    throw UsageError(cmd + ": input " + std::to_string(k + 1) + " must be a " + type + " document, got " +
                     in[k].type());
  return in[k];
}

void max_inputs(const std::vector<Document>& in, std::size_t n, const std::string& cmd) {
  if (in.size() > n) throw UsageError(cmd + ": too many input documents");
  for (const auto& d : in)
    if (!(d.ring == in.front().ring)) throw UsageError(cmd + ": input documents disagree on the ring");
}

Window default_window(const Complex& c) {
  const Span s = c.span();
  if (s.empty()) return {0, 0};
  if (s.bounded()) return {s.lo, s.hi};
  return c.certifying_window();
}

bool extends_past(const Complex& c, const Window& w) {
  const Span s = c.span();
  return !s.empty() && (!s.bounded() || s.lo < w.lo || s.hi > w.hi);
}

Json verdict_body(const std::string& cmd, bool pass) { return {{"command", cmd}, {"pass", pass}}; }

Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

CommandResult finish(const Ring& r, const std::string& type, Json body, bool pass) {
  return {pass ? kSuccess : kPropertyFailure, doc::make_document(r, type, std::move(body)), {}};
}

CommandResult cmd_resolve(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 1, "resolve");
  const Document& d = input(in, 0, "module", "resolve");
  FPModule m = doc::decode_module(d.ring, d.payload);
  Resolution r = resolve(m, f.depth.value_or(12));
  Json body = encode(r.complex);
  body["resolution"] = {{"kind", to_string(r.kind)}, {"depth", r.depth}};
  body["window_relative"] = r.kind == ResolutionKind::Truncated;
  if (r.kind == ResolutionKind::Truncated) body["window"] = encode(Window{-r.depth, 0});
  return finish(d.ring, "complex", std::move(body), true);
}

CommandResult cmd_dualize(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 1, "dualize");
  if (in.empty()) throw UsageError("dualize: expected a module, complex or chain_map document");
  const Document& d = in[0];
  const std::string t = d.type();
  if (t == "module") {
    DualModule dm = dualize_module(doc::decode_module(d.ring, d.payload));
    Json body = encode(dm.module);
    body["generators"] = encode(dm.generators);
    return finish(d.ring, "module", std::move(body), true);
  }
  if (t == "complex") {
    Complex c = doc::decode_complex(d.ring, d.payload);
    Window w = f.window.value_or(default_window(c));
    DualityVerdict v = duality_roundtrip_check(c, w);
    if (!v.pass) {
      Json body = verdict_body("dualize", false);
      body["window"] = encode(w);
      body["degree"] = opt_int(v.degree);
      body["detail"] = v.detail;
      body["complex"] = encode(c);
      return finish(d.ring, "verdict", std::move(body), false);
    }
    return finish(d.ring, "complex", encode(dualize(c)), true);
  }
  if (t == "chain_map")
    return finish(d.ring, "chain_map", encode(dualize(doc::decode_chain_map(d.ring, d.payload))), true);
  throw UsageError("dualize: cannot dualize a " + t + " document");
}

CommandResult cmd_generator(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 1, "generator");
  const Document& d = input(in, 0, "module", "generator");
  GeneratorPackage pkg = build_generator(doc::decode_module(d.ring, d.payload), f.depth.value_or(12));
  Window w = f.window.value_or(Window{-6, 0});
  QuasiIsoVerdict v = verify_resolution(pkg, w);
  Json body{{"module", encode(pkg.m)},
            {"dual", {{"module", encode(pkg.mdual.module)}, {"generators", encode(pkg.mdual.generators)}}},
            {"resolution", encode(pkg.p.complex)},
            {"resolution_kind", to_string(pkg.p.kind)},
            {"resolution_depth", pkg.p.depth},
            {"pi0", encode(pkg.pi0.matrix)},
            {"mu", encode(pkg.mu.matrix)},
            {"pstar", encode(pkg.pstar)},
            {"comparison", encode(pkg.comparison)},
            {"verification",
             {{"pass", v.pass},
              {"window", encode(w)},
              {"window_relative", v.window_relative},
              {"resolution_exact", v.resolution_exact},
              {"p_isomorphism", v.p_isomorphism},
              {"double_dual_quasi_iso", v.double_dual_quasi_iso},
              {"detail", v.detail}}}};
  return finish(d.ring, "package", std::move(body), v.pass);
}

CommandResult cmd_check_qiso(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 2, "check-qiso");
  const Document& d = input(in, 0, "module", "check-qiso");
  FPModule m = doc::decode_module(d.ring, d.payload);
  std::optional<Complex> q;
  if (in.size() > 1) {
    q = doc::decode_complex(d.ring, input(in, 1, "complex", "check-qiso").payload);
    if (q->side() != m.side()) throw UsageError("check-qiso: Q must consist of " + to_string(m.side()) + " modules");
  } else {
    std::mt19937 rng(f.seed.value_or(0));
    q = sample_complex(d.ring, rng, -1, 3, 2, 3, m.side());
  }
  Window w = f.window.value_or(Window{-4, 4});
  GeneratorPackage pkg = build_generator(m, f.depth.value_or(12));
  QuasiIsoVerdict v = verify_generator_quasi_iso(pkg, *q, w);
  HomEquivalence h = h0_hom_equivalence(pkg, *q, w);
  Json body = verdict_body("check-qiso", v.pass && h.pass);
  body["window"] = encode(w);
  body["window_relative"] = v.window_relative || extends_past(*q, w);
  body["q"] = encode(*q);
  body["non_exact"] = v.non_exact;
  body["resolution_exact"] = v.resolution_exact;
  body["p_isomorphism"] = v.p_isomorphism;
  body["double_dual_quasi_iso"] = v.double_dual_quasi_iso;
  body["h0_classes"] = {{"structure", encode(structure(h.classes.module))},
                        {"module_side", encode(structure(h.module_side.module))},
                        {"map", encode(h.map.matrix)},
                        {"isomorphism", h.pass}};
  body["detail"] = v.detail + h.detail;
  return finish(d.ring, "verdict", std::move(body), v.pass && h.pass);
}

CommandResult cmd_homology(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 1, "homology");
  const Document& d = input(in, 0, "complex", "homology");
  Complex c = doc::decode_complex(d.ring, d.payload);
  Window w = f.window.value_or(default_window(c));
  Json groups = Json::array();
  for (int j = w.lo; j <= w.hi; ++j) {
    Subquotient h = homology(c, j);
    groups.push_back({{"degree", j},
                      {"structure", encode(structure(h.module))},
                      {"module", encode(h.module)},
                      {"generators", encode(h.generators)}});
  }
  Json body = verdict_body("homology", true);
  body["window"] = encode(w);
  body["window_relative"] = extends_past(c, w);
  body["homology"] = std::move(groups);
  return finish(d.ring, "verdict", std::move(body), true);
}

CommandResult cmd_flat_cert(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 2, "flat-cert");
  const Document& d = input(in, 0, "relation", "flat-cert");
  FlatRelation rel = doc::decode_relation(d.ring, d.payload);
  if (in.size() > 1) {
    Complex q = doc::decode_complex(d.ring, input(in, 1, "complex", "flat-cert").payload);
    const int j = f.degree.value_or(0);
    CycleProbe p = cycle_flatness_probe(q, j, rel);
    if (p.ok) {
      Json body = encode(*p.certificate);
      body["relation"] = encode(FlatRelation(rel.a, rel.z));
      body["lift"] = encode(*p.lift);
      body["degree"] = j;
      return finish(d.ring, "certificate", std::move(body), true);
    }
    Json body = verdict_body("flat-cert", false);
    body["degree"] = j;
    body["detail"] = p.failure;
    body["span_module"] = encode(p.span_module);
    if (p.obstruction) {
      body["obstruction"] = {{"structure", encode(structure(p.obstruction->module))},
                             {"module", encode(p.obstruction->module)},
                             {"class", encode(*p.obstruction_class)}};
    }
    return finish(d.ring, "verdict", std::move(body), false);
  }
  auto cert = flat_certificate(rel);
  if (!cert) {
    Json body = verdict_body("flat-cert", false);
    body["detail"] = "target module is not projective";
    body["counterexample"] = encode(rel.target);
    return finish(d.ring, "verdict", std::move(body), false);
  }
  Json body = encode(*cert);
  body["relation"] = encode(rel);
  return finish(d.ring, "certificate", std::move(body), true);
}

CommandResult cmd_decompose(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 1, "decompose");
  const Document& d = input(in, 0, "complex", "decompose");
  Complex q = doc::decode_complex(d.ring, d.payload);
  BuildTree t = decompose_resolution(q, f.depth.value_or(4));
  Window w = f.window.value_or(Window{-6, 0});
  RebuildVerdict v = rebuild_verify(t, w);
  Json ver{{"pass", v.pass},
           {"window", encode(w)},
           {"window_relative", v.window_relative},
           {"degree", opt_int(v.degree)},
           {"detail", v.detail}};
  if (v.equivalence) {
    ver["to_target"] = encode(v.equivalence->to_target);
    ver["from_target"] = encode(v.equivalence->from_target);
    ver["on_target"] = encode(v.equivalence->on_target);
    ver["on_built"] = encode(v.equivalence->on_built);
  }
  Json body{{"root", encode(t.root)},
            {"target", encode(t.target)},
            {"depth", t.depth},
            {"truncated", t.truncated},
            {"free_leaves", t.free_leaves()},
            {"tail_leaves", t.tail_leaves()},
            {"verification", std::move(ver)}};
  return finish(d.ring, "build_tree", std::move(body), v.pass);
}

CommandResult cmd_split_check(const std::vector<Document>& in, const Flags& f) {
  max_inputs(in, 1, "split-check");
  const Document& d = input(in, 0, "complex", "split-check");
  Complex c = doc::decode_complex(d.ring, d.payload);
  Window w = f.window.value_or(default_window(c));
  SplitVerdict s = split_exactness_check(c, w);
  bool pass = s.kind == SplitKind::SplitExact;
  Json body = verdict_body("split-check", pass);
  body["kind"] = to_string(s.kind);
  body["window"] = encode(s.window);
  body["window_relative"] = s.window_relative;
  body["degree"] = opt_int(s.degree);
  body["complex"] = encode(c);
  if (s.cycle) body["cycle"] = {{"module", encode(*s.cycle)}, {"structure", encode(structure(*s.cycle))}};
  Json sections = Json::array();
  for (const auto& [j, t] : s.sections) sections.push_back({{"degree", j}, {"matrix", encode(t)}});
  body["sections"] = std::move(sections);
  if (s.contraction) body["contraction"] = encode(*s.contraction);
  if (f.bound) {
    CollapseVerdict cv = pd_bound_collapse(c, EngineConfig{*f.bound}, w);
    Json certs = Json::array();
    for (const auto& ct : cv.certificates) certs.push_back(encode(ct));
    body["collapse"] = {{"kind", to_string(cv.kind)},
                        {"n", *f.bound},
                        {"degree", opt_int(cv.degree)},
                        {"certificates", std::move(certs)},
                        {"detail", cv.detail}};
    if (cv.counterexample) body["collapse"]["counterexample"] = encode(*cv.counterexample);
    pass = pass && cv.kind == CollapseKind::Collapsed;
    body["pass"] = pass;
  }
  return finish(d.ring, "verdict", std::move(body), pass);
}

}  // namespace

std::optional<Window> parse_window(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) return std::nullopt;
  auto num = [](std::string_view v) -> std::optional<int> {
    int x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty()) return std::nullopt;
    return x;
  };
  auto a = num(std::string_view(s).substr(0, dots));
  auto b = num(std::string_view(s).substr(dots + 2));
  if (!a || !b || *a > *b) return std::nullopt;
  return Window{*a, *b};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"resolve",    "dualize",   "generator", "check-qiso",
                                              "homology",   "flat-cert", "decompose", "split-check"};
  return names;
}

CommandResult run_command(const std::string& name, const std::vector<Document>& inputs, const Flags& flags) {
  try {
    if (flags.depth && *flags.depth < 0) throw UsageError("--depth must be non-negative");
    if (flags.bound && *flags.bound < 0) throw UsageError("--bound must be non-negative");
    if (name == "resolve") return cmd_resolve(inputs, flags);
    if (name == "dualize") return cmd_dualize(inputs, flags);
    if (name == "generator") return cmd_generator(inputs, flags);
    if (name == "check-qiso") return cmd_check_qiso(inputs, flags);
    if (name == "homology") return cmd_homology(inputs, flags);
    if (name == "flat-cert") return cmd_flat_cert(inputs, flags);
    if (name == "decompose") return cmd_decompose(inputs, flags);
    if (name == "split-check") return cmd_split_check(inputs, flags);
    throw UsageError("unknown command '" + name + "'");
  } catch (const std::logic_error& e) {
    // invalid_argument, RingMismatch, DimensionError land here as well as
    // internal check failures; none of them is a property verdict.
    return {kUsageError, std::nullopt, e.what()};
  } catch (const std::runtime_error& e) {
    return {kUsageError, std::nullopt, e.what()};
  }
}

}  // namespace kproj::cli
