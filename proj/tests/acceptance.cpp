// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "kproj/commands.hpp"

using namespace kproj;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const Ring kZ = Ring::integers();
const Ring kF5 = Ring::prime_field(5);
const Ring kZ4 = Ring::integers_mod(4);
const std::vector<Ring> kRings{kZ, kF5, kZ4};

// Plain triple loop over the stored representatives, reduced at the end; shares
// nothing with the library's arithmetic.
std::vector<std::vector<Integer>> raw(const Matrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

using Raw = std::vector<std::vector<Integer>>;

Raw mul(const Raw& a, const Raw& b, std::size_t inner, std::size_t cols) {
  Raw c(a.size(), std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

bool congruent(const Raw& a, const Raw& b, const Ring& r) {
  if (a.size() != b.size()) return false;
  const Integer n = r.modulus();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      Integer d = a[i][j] - b[i][j];
      if (n == 0 ? d != 0 : d % n != 0) return false;
    }
  }
  return true;
}

Raw transpose(const Raw& a, std::size_t cols) {
  Raw t(cols, std::vector<Integer>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

// a ast = 0 and z = sigma q ast^T + R witness, by raw products only.
bool independent_check(const FlatRelation& rel, const FlatCertificate& c) {
  const Ring& r = rel.a.ring();
  const std::size_t m = rel.a.cols(), n = c.ast.cols();
  if (c.ast.rows() != m || c.q.cols() != n || c.sigma.cols() != c.q.rows()) return false;
  Raw aast = mul(raw(rel.a), raw(c.ast), m, n);
  if (!congruent(aast, Raw(1, std::vector<Integer>(n, 0)), r)) return false;
  Raw sq = mul(raw(c.sigma), raw(c.q), c.q.rows(), n);
  Raw lhs = mul(sq, transpose(raw(c.ast), n), n, m);
  const Matrix& pres = rel.target.presentation();
  Raw rw = mul(raw(pres), raw(c.witness), pres.cols(), m);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) lhs[i][j] += rw[i][j];
  return congruent(lhs, raw(rel.z), r);
}

std::string ring_tag(const Ring& r) { return r.name(); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  std::mt19937 rng(101);
  int nonzero = 0, periodic = 0;
  for (const Ring& r : kRings)
    for (int t = 0; t < 200; ++t) {
      FPModule m = sample_module(r, rng, 3, 5);
      GeneratorPackage pkg = build_generator(m);
      nonzero += pkg.mdual.module.rank0() > 0;
      periodic += pkg.p.kind == ResolutionKind::Periodic;
      QuasiIsoVerdict v = verify_resolution(pkg, {-6, 0});
      if (!v.pass || !v.p_isomorphism)
        return {false, ring_tag(r) + " module " + m.presentation().to_string() + ": " + v.detail};
    }
  return {true, "600 packages (" + std::to_string(nonzero) + " with M* != 0, " + std::to_string(periodic) +
                    " periodic), pi quasi-iso on [-6, 0], p invertible"};
}

Outcome criterion2() {
  std::mt19937 rng(202);
  std::uniform_int_distribution<int> lo(-2, 0), len(1, 3);
  for (int t = 0; t < 100; ++t) {
    const Ring& r = kRings[t % 3];
    FPModule m = sample_module(r, rng, 3, 5);
    Complex q = sample_complex(r, rng, lo(rng), len(rng), 2, 3, m.side());
    GeneratorPackage pkg = build_generator(m);
    QuasiIsoVerdict v = verify_generator_quasi_iso(pkg, q, {-4, 4});
    if (!v.pass) return {false, ring_tag(r) + " pair " + std::to_string(t) + ": " + v.detail};
  }
  return {true, "100 pairs, Hom(cone, Q) exact on [-4, 4]"};
}

Outcome criterion3() {
  std::mt19937 rng(303);
  std::uniform_int_distribution<int> lo(-3, 1), len(1, 4);
  std::size_t checks = 0;
  for (const Ring& r : kRings) {
    GeneratorPackage pkg = build_generator(FPModule::free(r, 1));
    for (int t = 0; t < 50; ++t) {
      Complex q = sample_complex(r, rng, lo(rng), len(rng), 2, 3);
      for (int i = -3; i <= 3; ++i) {
        if (!suspension_identification(pkg, q, i))
          return {false, ring_tag(r) + " Q " + std::to_string(t) + " fails at i = " + std::to_string(i)};
        ++checks;
      }
    }
  }
  return {true, std::to_string(checks) + " identifications H^0 Hom(Sigma^i A, Q) ~ H^{-i} Q"};
}

Outcome criterion4() {
  std::mt19937 rng(404);
  std::uniform_int_distribution<std::size_t> msz(1, 4), rk(1, 3);
  std::size_t ok = 0;
  for (const Ring& r : kRings)
    for (int t = 0; t < 500; ++t) {
      FlatRelation rel = sample_relation(r, rng, msz(rng), rk(rng), 5);
      auto cert = flat_certificate(rel);
      if (!cert) return {false, ring_tag(r) + ": no certificate for a free relation"};
      if (!independent_check(rel, *cert)) return {false, ring_tag(r) + ": independent checker rejects a certificate"};
      ++ok;
    }
  return {true, std::to_string(ok) + "/1500 certificates confirmed by raw products"};
}

// Sum of elementary contractibles A -1-> A placed at random degrees, then
// conjugated by random unimodular changes of basis in every degree.
Complex scrambled_contractible(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> count(0, 2), coef(-3, 3);
  std::vector<std::size_t> ranks(static_cast<std::size_t>(hi - lo + 1), 0);
  std::vector<Matrix> diffs;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(ranks.size() - 1);
  for (std::size_t k = 0; k + 1 < ranks.size(); ++k)
    for (int c = count(rng); c > 0; --c) pairs[k].push_back({ranks[k]++, ranks[k + 1]++});
  std::vector<Matrix> g;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    Matrix u = Matrix::identity(kZ, ranks[k]);
    for (int s = 0; s < 6 && ranks[k] > 1; ++s) {
      std::uniform_int_distribution<std::size_t> idx(0, ranks[k] - 1);
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j) continue;
      Matrix e = Matrix::identity(kZ, ranks[k]);
      e.set(i, j, coef(rng));
      u = e * u;
    }
    g.push_back(u);
  }
  for (std::size_t k = 0; k + 1 < ranks.size(); ++k) {
    Matrix d(kZ, ranks[k + 1], ranks[k]);
    for (auto [a, b] : pairs[k]) d.set(b, a, 1);
    diffs.push_back(g[k + 1] * d * *inverse(g[k]));
  }
  return Complex(kZ, Side::Left, lo, std::move(ranks), std::move(diffs));
}

Outcome criterion5() {
  std::mt19937 rng(505);
  std::uniform_int_distribution<int> lo(-4, 0), len(2, 5);
  for (int t = 0; t < 50; ++t) {
    int a = lo(rng);
    Complex q = scrambled_contractible(rng, a, a + len(rng) - 1);
    Window w{a - 1, a + 5};
    CollapseVerdict v = pd_bound_collapse(q, EngineConfig::for_ring(kZ), w);
    if (v.kind != CollapseKind::Collapsed || !v.split || !v.split->contraction)
      return {false, "complex " + std::to_string(t) + ": " + to_string(v.kind) + " " + v.detail};
    const Homotopy& s = *v.split->contraction;
    ChainMap id = ChainMap::identity(q), zero = ChainMap::zero(q, q);
    for (int j = w.lo; j <= w.hi; ++j) {
      // id = d s + s d, with raw products
      Raw ds = mul(raw(q.diff(j - 1)), raw(s.at(j)), q.rank(j - 1), q.rank(j));
      Raw sd = mul(raw(s.at(j + 1)), raw(q.diff(j)), q.rank(j + 1), q.rank(j));
      for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t k = 0; k < ds[i].size(); ++k) ds[i][k] += sd[i][k];
      if (!congruent(ds, raw(Matrix::identity(kZ, q.rank(j))), kZ))
        return {false, "complex " + std::to_string(t) + ": id != ds + sd in degree " + std::to_string(j)};
    }
    if (s.failure(id, zero, w)) return {false, "homotopy check disagrees"};
  }
  return {true, "50 scrambled contractibles: cycles projective, splittings, id = ds + sd"};
}

Outcome criterion6() {
  Matrix two = Matrix::from_rows(kZ4, {{2}});
  Complex q(kZ4, Side::Left, 0, {1, 1, 1}, {two, two}, 1, 1);
  for (int a = -12; a <= 8; a += 4)
    if (auto bad = first_non_exact_degree(q, {a, a + 5})) return {false, "not exact at " + std::to_string(*bad)};
  SplitVerdict s = split_exactness_check(q, {-3, 2});
  if (s.kind != SplitKind::ExactNotSplit || !s.cycle || !(structure(*s.cycle) == ModuleStructure{0, {2}}))
    return {false, "split check reported " + to_string(s.kind)};
  CycleProbe p = cycle_flatness_probe(q, 0, FlatRelation(Matrix::from_rows(kZ4, {{2}}), two));
  if (p.ok || !p.obstruction || structure(p.obstruction->module).is_zero())
    return {false, "cycle probe did not report the Hom vanishing failure"};
  CollapseVerdict c = pd_bound_collapse(q, EngineConfig::for_ring(kZ4), {-3, 2});
  if (c.kind == CollapseKind::Collapsed) return {false, "pd collapse overclaims"};
  return {true, "exact everywhere, cycle Z/2 not projective, obstruction " +
                    structure(p.obstruction->module).to_string(kZ4) + ", collapse " + to_string(c.kind)};
}

Outcome criterion7() {
  std::mt19937 rng(707);
  for (int t = 0; t < 100; ++t) {
    FPModule m = sample_module(kZ, rng, 3, 5, Side::Right);
    Resolution r = resolve(m);
    if (r.kind != ResolutionKind::Finite) return {false, "resolution over Z is not finite"};
    int l = -1;
    for (int j = 0; j >= -r.depth; --j)
      if (r.complex.rank(j) > 0) l = -j;
    BuildTree tree = decompose_resolution(r.complex, 4);
    RebuildVerdict v = rebuild_verify(tree, {-6, 0});
    if (!v.pass) return {false, "module " + std::to_string(t) + ": " + v.detail};
    if (static_cast<int>(tree.free_leaves()) != l + 1)
      return {false, "module " + std::to_string(t) + ": " + std::to_string(tree.free_leaves()) +
                         " leaves for L = " + std::to_string(l)};
  }
  Resolution r4 = resolve(FPModule::cyclic(kZ4, 2, Side::Right));
  BuildTree tree = decompose_resolution(r4.complex, 4);
  RebuildVerdict v = rebuild_verify(tree, {-6, 0});
  if (!v.pass || !v.window_relative) return {false, "Z/4 depth 4: " + v.detail};
  return {true, "100 Z modules with L+1 leaves; Z/4 depth 4 window-relative on [-6, 0]"};
}

Outcome criterion8() {
  std::mt19937 rng(808);
  std::uniform_int_distribution<int> lo(-3, 1), len(1, 4);
  for (int t = 0; t < 300; ++t) {
    const Ring& r = kRings[t % 3];
    Complex g = sample_complex(r, rng, lo(rng), len(rng), 4, 5);
    DualityVerdict v = duality_roundtrip_check(g, {-5, 5});
    if (!v.pass) return {false, "complex " + std::to_string(t) + ": " + v.detail};
  }
  for (int t = 0; t < 100; ++t) {
    const Ring& r = kRings[t % 3];
    Complex x = sample_complex(r, rng, -1, 3), y = sample_complex(r, rng, -1, 3), z = sample_complex(r, rng, -1, 3);
    ChainMap f = sample_chain_map(x, y, rng), g = sample_chain_map(y, z, rng);
    DualityVerdict v = duality_roundtrip_check(x, {-3, 3}, f, g);
    if (!v.pass || !v.functorial || !v.natural) return {false, "maps " + std::to_string(t) + ": " + v.detail};
  }
  return {true, "300 roundtrips, 100 functoriality and naturality checks"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome criterion9(const std::string& cli, const std::string& fixtures, const std::string& scratch) {
  std::ifstream cases(fixtures + "/cases.txt");
  if (!cases) return {false, "no cases.txt in " + fixtures};
  std::set<std::string> commands, inputs;
  std::set<int> statuses;
  std::size_t n = 0, outputs = 0;
  std::string line;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int expected;
    std::string command, arg, args;
    ls >> expected >> command;
    while (ls >> arg) {
      if (arg.rfind("--", 0) == 0) {
        args += " " + arg;
      } else {
        args += " " + fixtures + "/" + arg;
        inputs.insert(arg);
      }
    }
    const std::string out = scratch + "/case" + std::to_string(n++) + ".json";
    std::remove(out.c_str());
    int rc = run(cli + " " + command + args + " --output=" + out + " 2>/dev/null");
    if (rc != expected)
      return {false, "'" + command + args + "' exited " + std::to_string(rc) + ", expected " + std::to_string(expected)};
    commands.insert(command);
    statuses.insert(rc);
    if (rc == 2) continue;
    // emitted outputs re-parse and re-emit byte for byte, in both formats
    std::string text = read_file(out);
    doc::Document d = doc::parse_document(text);
    const bool as_machine = args.find("--format=machine") != std::string::npos;
    std::string machine = doc::emit(d, doc::Format::Machine);
    if (doc::emit(d, as_machine ? doc::Format::Machine : doc::Format::Text) != text ||
        doc::emit(doc::parse_document(machine), doc::Format::Machine) != machine)
      return {false, "output of '" + command + args + "' is not byte-stable"};
    ++outputs;
  }
  for (const auto& c : cli::command_names())
    if (!commands.count(c)) return {false, "command " + c + " is not exercised"};
  if (statuses != std::set<int>{0, 1, 2}) return {false, "exit-status matrix does not cover 0, 1 and 2"};
  // input corpus: every well-formed fixture round-trips through the CLI's format
  std::size_t docs = 0;
  for (const auto& f : inputs) {
    std::string text = read_file(fixtures + "/" + f);
    if (text.empty()) continue;
    ++docs;
    try {
      std::string once = doc::emit(doc::parse_document(text));
      if (doc::emit(doc::parse_document(once)) != once) return {false, f + " does not round-trip"};
    } catch (const std::exception&) {
      if (f.rfind("bad_", 0) != 0) return {false, f + " should parse"};
    }
  }
  if (docs < 30) return {false, "only " + std::to_string(docs) + " fixture documents"};
  return {true, std::to_string(n) + " invocations over " + std::to_string(docs) + " documents, " +
                    std::to_string(outputs) + " outputs byte-stable"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: acceptance <kproj-cli> <fixtures dir> <scratch dir>\n";
    return 2;
  }
  const std::string cli = argv[1], fixtures = argv[2], scratch = argv[3];
  struct Criterion {
    int id;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, 30, criterion1}, {2, 60, criterion2}, {3, 30, criterion3}, {4, 10, criterion4}, {5, 60, criterion5},
      {6, 0, criterion6},  {7, 60, criterion7}, {8, 20, criterion8},
      {9, 0, [&] { return criterion9(cli, fixtures, scratch); }}};
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && c.budget > 0 && secs > c.budget) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget)) + " s budget)";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " [" << buf << "] " << o.detail
              << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
