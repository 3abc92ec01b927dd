#include <catch_amalgamated.hpp>

#include <random>

#include "kproj/commands.hpp"

using namespace kproj;
using namespace kproj::doc;

namespace {
Ring zz = Ring::integers();

std::string roundtrip(const std::string& text, Format f) { return emit(parse_document(text), f); }
}  // namespace

TEST_CASE("minimal documents parse") {
  Document d = parse_document(R"({"version":"kproj-doc/1","ring":{"kind":"Z"},
    "payload":{"type":"matrix","rows":0,"cols":0,"entries":[]}})");
  CHECK(d.ring == zz);
  CHECK(d.type() == "matrix");
  Document c = parse_document(R"({"version":"kproj-doc/1","ring":{"kind":"Z"},"payload":{"type":"complex",
    "side":"left","terms":[{"degree":-1,"rank":1},{"degree":0,"rank":1}],
    "differentials":[{"degree":-1,"matrix":{"rows":1,"cols":1,"entries":[[2]]}}]}})");
  Complex two = decode_complex(c.ring, c.payload);
  CHECK(two == Complex::two_term(Matrix::from_rows(zz, {{2}}), -1));
}

TEST_CASE("d^2 violations name the product") {
  std::string text = R"({"version":"kproj-doc/1","ring":{"kind":"Z"},"payload":{"type":"complex","side":"left",
    "terms":[{"degree":0,"rank":1},{"degree":1,"rank":1},{"degree":2,"rank":1}],
    "differentials":[{"degree":0,"matrix":{"rows":1,"cols":1,"entries":[[3]]}},
                     {"degree":1,"matrix":{"rows":1,"cols":1,"entries":[[2]]}}]}})";
  try {
    parse_document(text);
    FAIL("accepted a complex with d^1 d^0 != 0");
  } catch (const InvariantError& e) {
    CHECK(std::string(e.what()).find("d^1 d^0 = [6]") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_document("{\n  \"version\": \"kproj-doc/1\",\n  \"ring\": {\"kind\": \"Z\"} x\n}");
    FAIL("accepted malformed text");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 25);  // the stray x
  }
  CHECK_THROWS_AS(parse_document(R"({"version":"kproj-doc/1","ring":{"kind":"Fp","p":4},
    "payload":{"type":"matrix","rows":0,"cols":0,"entries":[]}})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"version":"kproj-doc/1","ring":{"kind":"Zmod","n":4},
    "payload":{"type":"matrix","rows":1,"cols":1,"entries":[[-1]]}})"), InvariantError);
}

TEST_CASE("encode and decode are inverse") {
  std::mt19937 rng(21);
  for (const Ring& r : {zz, Ring::integers_mod(4), Ring::prime_field(5)}) {
    for (int t = 0; t < 20; ++t) {
      Complex c = sample_complex(r, rng, -2, 4);
      CHECK(decode_complex(r, encode(c)) == c);
      FPModule m = sample_module(r, rng);
      CHECK(decode_module(r, encode(m)) == m);
      Document d = make_document(r, "complex", encode(c));
      std::string text = emit(d);
      CHECK(roundtrip(text, Format::Text) == text);
      std::string machine = emit(d, Format::Machine);
      CHECK(roundtrip(machine, Format::Machine) == machine);
      CHECK(roundtrip(machine, Format::Text) == text);
    }
  }
  Resolution p = resolve(FPModule::cyclic(Ring::integers_mod(4), 2));
  CHECK(decode_complex(p.complex.ring(), encode(p.complex)) == p.complex);
  Matrix big(zz, 1, 1);
  big.set(0, 0, Integer("-123456789012345678901234567890"));
  CHECK(decode_matrix(zz, encode(big)) == big);
  CHECK(encode(big)["entries"][0][0] == "-123456789012345678901234567890");
}

TEST_CASE("build trees re-evaluate to the same complex") {
  Resolution p = resolve(FPModule::cyclic(Ring::integers_mod(4), 2, Side::Right));
  BuildTree t = decompose_resolution(p.complex, 3);
  BuildPtr back = decode_build_node(p.complex.ring(), encode(t.root));
  CHECK(back->value == t.root->value);
  CHECK(encode(back) == encode(t.root));
}

TEST_CASE("windows") {
  auto w = cli::parse_window("-3..2");
  REQUIRE(w);
  CHECK(w->lo == -3);
  CHECK(w->hi == 2);
  CHECK_FALSE(cli::parse_window("2..1"));
  CHECK_FALSE(cli::parse_window("1.2"));
  CHECK_FALSE(cli::parse_window("a..b"));
}

TEST_CASE("commands in process") {
  Document two = make_document(zz, "complex", encode(Complex::two_term(Matrix::from_rows(zz, {{2}}), -1)));
  cli::Flags f;
  f.window = Window{-1, 0};
  cli::CommandResult h = cli::run_command("homology", {two}, f);
  REQUIRE(h.status == cli::kSuccess);
  const Json& groups = h.output->payload["homology"];
  CHECK(groups[0]["structure"]["torsion"].empty());
  CHECK(groups[1]["structure"]["torsion"] == Json::array({2}));

  Document m = make_document(zz, "module", encode(FPModule::cyclic(zz, 2)));
  cli::CommandResult g = cli::run_command("generator", {m}, {});
  REQUIRE(g.status == cli::kSuccess);
  CHECK(g.output->payload["pstar"]["terms"].empty());

  CHECK(cli::run_command("homology", {m}, {}).status == cli::kUsageError);
  CHECK(cli::run_command("nope", {}, {}).status == cli::kUsageError);

  // every emitted output re-parses to itself
  for (const auto& r : {h, g}) {
    std::string text = emit(*r.output);
    CHECK(roundtrip(text, Format::Text) == text);
  }
}
