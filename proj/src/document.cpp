#include "kproj/document.hpp"

#include <limits>
#include <set>

namespace kproj::doc {

ParseError::ParseError(const std::string& what, std::size_t line_, std::size_t column_)
    : std::runtime_error(line_ ? what + " at line " + std::to_string(line_) + ", column " + std::to_string(column_)
                               : what),
      line(line_),
      column(column_) {}

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

long long int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) throw ParseError(where + ": field '" + key + "' must be an integer");
  return v.get<long long>();
}

std::size_t size_field(const Json& j, const char* key, const std::string& where) {
  long long v = int_field(j, key, where);
  if (v < 0) throw ParseError(where + ": field '" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) throw ParseError(where + ": field '" + key + "' must be an array");
  return v;
}

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(x));
  return Json(x.str());
}

Integer integer_from(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (k == s.size() || s.find_first_not_of("0123456789", k) != std::string::npos)
      throw ParseError(where + ": '" + s + "' is not a decimal integer");
    return Integer(s);
  }
  throw ParseError(where + ": matrix entries must be integers or decimal strings");
}

Side side_from(const Json& j, const std::string& where) {
  const Json& v = field(j, "side", where);
  if (v == "left") return Side::Left;
  if (v == "right") return Side::Right;
  throw ParseError(where + ": side must be \"left\" or \"right\"");
}

Json side_json(Side s) { return s == Side::Left ? "left" : "right"; }

Json graded_json(const Span& s, const std::function<Matrix(int)>& at) {
  Json out = Json::array();
  if (s.empty()) return out;
  for (int j = s.lo; j <= s.hi; ++j) out.push_back({{"degree", j}, {"matrix", encode(at(j))}});
  return out;
}

// Sorted contiguous {degree, matrix} list; returns lo and the matrices.
std::pair<int, std::vector<Matrix>> graded_from(const Ring& r, const Json& list, const std::string& where) {
  if (!list.is_array()) throw ParseError(where + ": expected a list of {degree, matrix}");
  std::vector<Matrix> out;
  int lo = 0;
  for (std::size_t k = 0; k < list.size(); ++k) {
    int deg = static_cast<int>(int_field(list[k], "degree", where));
    if (k == 0) lo = deg;
    if (deg != lo + static_cast<int>(k)) throw ParseError(where + ": degrees must be sorted and contiguous");
    out.push_back(decode_matrix(r, field(list[k], "matrix", where)));
  }
  return {lo, std::move(out)};
}

void tail_json(Json& out, const char* key, int threshold, int period) {
  if (period) out[key] = {{"threshold", threshold}, {"period", period}};
}

int tail_from(const Json& j, const char* key, int threshold, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return 0;
  int t = static_cast<int>(int_field(*it, "threshold", where));
  int p = static_cast<int>(int_field(*it, "period", where));
  if (p <= 0) throw ParseError(where + ": tail period must be positive");
  if (t != threshold) throw ParseError(where + ": tail threshold must be the end of the explicit region");
  return p;
}

}  // namespace

Json ring_to_json(const Ring& r) {
  switch (r.kind()) {
    case RingKind::Integers:
      return {{"kind", "Z"}};
    case RingKind::IntegersModulo:
      return {{"kind", "Zmod"}, {"n", r.modulus()}};
    case RingKind::PrimeField:
      return {{"kind", "Fp"}, {"p", r.modulus()}};
  }
  return {};
}

Ring ring_from_json(const Json& j) {
  const Json& k = field(j, "kind", "ring");
  try {
    if (k == "Z") return Ring::integers();
    if (k == "Zmod") return Ring::integers_mod(int_field(j, "n", "ring"));
    if (k == "Fp") return Ring::prime_field(int_field(j, "p", "ring"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("ring: ") + e.what());
  }
  throw ParseError("ring: kind must be one of Z, Zmod, Fp");
}

Json encode(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Matrix decode_matrix(const Ring& r, const Json& j) {
  const std::string where = "matrix";
  std::size_t rows = size_field(j, "rows", where), cols = size_field(j, "cols", where);
  const Json& e = array_field(j, "entries", where);
  if (e.size() != rows) throw ParseError(where + ": entries has " + std::to_string(e.size()) + " rows, expected " +
                                         std::to_string(rows));
  Matrix m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!e[i].is_array() || e[i].size() != cols)
      throw ParseError(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      Integer x = integer_from(e[i][k], where);
      if (r.normalize(x) != x)
        throw InvariantError(where + ": entry " + x.str() + " is not a canonical representative in " + r.name());
      m.set(i, k, x);
    }
  }
  return m;
}

Json encode(const FPModule& m) { return {{"side", side_json(m.side())}, {"presentation", encode(m.presentation())}}; }

FPModule decode_module(const Ring& r, const Json& j) {
  return FPModule(decode_matrix(r, field(j, "presentation", "module")), side_from(j, "module"));
}

Json encode(const Complex& c) {
  Json out{{"side", side_json(c.side())}, {"terms", Json::array()}, {"differentials", Json::array()}};
  const Span s = c.span();
  if (s.empty()) return out;
  for (int j = s.lo; j <= s.hi; ++j) out["terms"].push_back({{"degree", j}, {"rank", c.rank(j)}});
  for (int j = s.lo; j < s.hi; ++j) out["differentials"].push_back({{"degree", j}, {"matrix", encode(c.diff(j))}});
  tail_json(out, "lower_tail", s.lo, s.lower_period);
  tail_json(out, "upper_tail", s.hi, s.upper_period);
  return out;
}

Complex decode_complex(const Ring& r, const Json& j) {
  const std::string where = "complex";
  Side side = side_from(j, where);
  const Json& terms = array_field(j, "terms", where);
  const Json& diffs = array_field(j, "differentials", where);
  if (terms.empty()) {
    if (!diffs.empty()) throw ParseError(where + ": differentials without terms");
    return Complex(r, side);
  }
  std::vector<std::size_t> ranks;
  int lo = static_cast<int>(int_field(terms[0], "degree", where));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (int_field(terms[k], "degree", where) != lo + static_cast<long long>(k))
      throw ParseError(where + ": term degrees must be sorted and contiguous");
    ranks.push_back(size_field(terms[k], "rank", where));
  }
  const int hi = lo + static_cast<int>(ranks.size()) - 1;
  auto [dlo, ds] = graded_from(r, diffs, where + " differentials");
  if (ds.size() + 1 != ranks.size() || (!ds.empty() && dlo != lo))
    throw ParseError(where + ": need d^j for every j in [" + std::to_string(lo) + ", " + std::to_string(hi - 1) + "]");
  for (std::size_t k = 0; k < ds.size(); ++k)
    if (ds[k].cols() != ranks[k] || ds[k].rows() != ranks[k + 1])
      throw InvariantError(where + ": d^" + std::to_string(lo + static_cast<int>(k)) + " has shape " +
                           std::to_string(ds[k].rows()) + "x" + std::to_string(ds[k].cols()) + ", expected " +
                           std::to_string(ranks[k + 1]) + "x" + std::to_string(ranks[k]));
  int lp = tail_from(j, "lower_tail", lo, where), up = tail_from(j, "upper_tail", hi, where);
  try {
    return Complex(r, side, lo, std::move(ranks), std::move(ds), lp, up);
  } catch (const ComplexError& e) {
    throw InvariantError(std::string("complex: ") + e.what());
  }
}

Json encode(const ChainMap& f) {
  const Span s = f.span();
  Json out{{"source", encode(f.source())},
           {"target", encode(f.target())},
           {"components", graded_json(s, [&](int j) { return f.at(j); })}};
  tail_json(out, "lower_tail", s.lo, s.lower_period);
  tail_json(out, "upper_tail", s.hi, s.upper_period);
  return out;
}

ChainMap decode_chain_map(const Ring& r, const Json& j) {
  const std::string where = "chain_map";
  Complex x = decode_complex(r, field(j, "source", where));
  Complex y = decode_complex(r, field(j, "target", where));
  auto [lo, comps] = graded_from(r, array_field(j, "components", where), where + " components");
  const int hi = lo + static_cast<int>(comps.size()) - 1;
  int lp = comps.empty() ? 0 : tail_from(j, "lower_tail", lo, where);
  int up = comps.empty() ? 0 : tail_from(j, "upper_tail", hi, where);
  try {
    ChainMap f(x, y, Graded<Matrix>(lo, std::move(comps), lp, up));
    Span s = combine_spans({x.span(), y.span(), f.span()});
    Window w = s.empty() ? Window{0, 0} : Window{s.lo - 1, s.hi + 1};
    if (auto bad = f.commutation_failure(w))
      throw InvariantError(where + ": d f != f d in degree " + std::to_string(*bad) + ": d f = " +
                           (y.diff(*bad) * f.at(*bad)).to_string() + ", f d = " +
                           (f.at(*bad + 1) * x.diff(*bad)).to_string());
    return f;
  } catch (const ComplexError& e) {
    throw InvariantError(std::string("chain_map: ") + e.what());
  }
}

Json encode(const Homotopy& h) {
  const Span s = h.span();
  Json out{{"components", graded_json(s, [&](int j) { return h.at(j); })}};
  tail_json(out, "lower_tail", s.lo, s.lower_period);
  tail_json(out, "upper_tail", s.hi, s.upper_period);
  return out;
}

Json encode(const FlatRelation& rel) {
  return {{"a", encode(rel.a)}, {"z", encode(rel.z)}, {"target", encode(rel.target)}};
}

FlatRelation decode_relation(const Ring& r, const Json& j) {
  const std::string where = "relation";
  Matrix a = decode_matrix(r, field(j, "a", where));
  Matrix z = decode_matrix(r, field(j, "z", where));
  FPModule t = j.contains("target") ? decode_module(r, j.at("target")) : FPModule::free(r, z.rows());
  if (a.rows() != 1 || a.cols() != z.cols())
    throw InvariantError(where + ": a must be 1 x m with m the number of columns of z");
  if (z.rows() != t.rank0()) throw InvariantError(where + ": z does not live in the target");
  FlatRelation rel(a, z, t);
  if (!rel.holds())
    throw InvariantError(where + ": sum a_s z_s = " + (z * a.transpose()).to_string() + " is not zero in the target");
  return rel;
}

Json encode(const FlatCertificate& c) {
  return {{"ast", encode(c.ast)}, {"q", encode(c.q)}, {"sigma", encode(c.sigma)}, {"witness", encode(c.witness)}};
}

FlatCertificate decode_certificate(const Ring& r, const Json& j) {
  const std::string where = "certificate";
  return {decode_matrix(r, field(j, "ast", where)), decode_matrix(r, field(j, "q", where)),
          decode_matrix(r, field(j, "sigma", where)), decode_matrix(r, field(j, "witness", where))};
}

Json encode(const BuildPtr& n) {
  Json out{{"kind", to_string(n->kind)}};
  switch (n->kind) {
    case BuildNode::Kind::FreeLeaf: {
      const Span s = n->value.span();
      out["side"] = side_json(n->value.side());
      out["rank"] = s.empty() ? 0 : n->value.rank(0);
      break;
    }
    case BuildNode::Kind::TailLeaf:
      out["complex"] = encode(n->value);
      break;
    case BuildNode::Kind::Suspension:
      out["shift"] = n->shift;
      out["children"] = Json::array({encode(n->children[0])});
      break;
    case BuildNode::Kind::Cone: {
      Json ms = Json::array();
      for (std::size_t k = 0; k < n->map.values().size(); ++k)
        ms.push_back({{"degree", n->map.lo() + static_cast<int>(k)}, {"matrix", encode(n->map.values()[k])}});
      out["map"] = std::move(ms);
      out["children"] = Json::array({encode(n->children[0]), encode(n->children[1])});
      break;
    }
  }
  return out;
}

BuildPtr decode_build_node(const Ring& r, const Json& j) {
  const std::string where = "build_tree";
  const Json& kind = field(j, "kind", where);
  auto node = [](BuildNode n) { return std::make_shared<const BuildNode>(std::move(n)); };
  if (kind == "free")
    return node({BuildNode::Kind::FreeLeaf, Complex::single(r, side_from(j, where), size_field(j, "rank", where), 0),
                 0, {}, {}, nullptr});
  if (kind == "tail")
    return node({BuildNode::Kind::TailLeaf, decode_complex(r, field(j, "complex", where)), 0, {}, {}, nullptr});
  const Json& ch = array_field(j, "children", where);
  try {
    if (kind == "suspension") {
      if (ch.size() != 1) throw ParseError(where + ": a suspension has one child");
      BuildPtr c = decode_build_node(r, ch[0]);
      int shift = static_cast<int>(int_field(j, "shift", where));
      return node({BuildNode::Kind::Suspension, suspend(c->value, shift), shift, {c}, {}, nullptr});
    }
    if (kind == "cone") {
      if (ch.size() != 2) throw ParseError(where + ": a cone has two children");
      BuildPtr s = decode_build_node(r, ch[0]), t = decode_build_node(r, ch[1]);
      auto [lo, ms] = graded_from(r, array_field(j, "map", where), where + " map");
      Graded<Matrix> map(lo, std::move(ms));
      ChainMap f(s->value, t->value, map);
      Span sp = combine_spans({s->value.span(), t->value.span(), f.span()});
      if (!sp.empty())
        if (auto bad = f.commutation_failure({sp.lo - 1, sp.hi + 1}))
          throw InvariantError(where + ": cone map is not a chain map in degree " + std::to_string(*bad));
      return node({BuildNode::Kind::Cone, cone(f).cone, 0, {s, t}, std::move(map), nullptr});
    }
  } catch (const ComplexError& e) {
    throw InvariantError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown node kind");
}

Json encode(const ModuleStructure& s) {
  Json t = Json::array();
  for (const auto& d : s.torsion) t.push_back(integer_json(d));
  return {{"free_rank", s.free_rank}, {"torsion", std::move(t)}};
}

Json encode(const Window& w) { return {{"lo", w.lo}, {"hi", w.hi}}; }

Window decode_window(const Json& j) {
  Window w{static_cast<int>(int_field(j, "lo", "window")), static_cast<int>(int_field(j, "hi", "window"))};
  if (w.hi < w.lo) throw ParseError("window: lo must not exceed hi");
  return w;
}

Document make_document(const Ring& r, const std::string& type, Json body) {
  Document d;
  d.ring = r;
  body["type"] = type;
  d.payload = std::move(body);
  return d;
}

void validate(const Document& d) {
  static const std::set<std::string> known{"matrix",   "module",     "complex", "chain_map", "relation",
                                           "certificate", "build_tree", "verdict", "package"};
  const std::string t = d.type();
  if (!known.count(t)) throw ParseError("payload: unknown type '" + t + "'");
  const Json& p = d.payload;
  if (t == "matrix") decode_matrix(d.ring, p);
  if (t == "module") decode_module(d.ring, p);
  if (t == "complex") decode_complex(d.ring, p);
  if (t == "chain_map") decode_chain_map(d.ring, p);
  if (t == "relation") decode_relation(d.ring, p);
  if (t == "certificate") {
    FlatRelation rel = decode_relation(d.ring, field(p, "relation", "certificate"));
    FlatCertificate c = decode_certificate(d.ring, p);
    if (!check_certificate(rel, c)) throw InvariantError("certificate: equations do not hold");
  }
  if (t == "build_tree") decode_build_node(d.ring, field(p, "root", "build_tree"));
  if (t == "verdict") {
    if (!field(p, "pass", "verdict").is_boolean()) throw ParseError("verdict: 'pass' must be a boolean");
    field(p, "command", "verdict");
  }
  if (t == "package") {
    decode_module(d.ring, field(p, "module", "package"));
    decode_complex(d.ring, field(p, "resolution", "package"));
    decode_complex(d.ring, field(p, "pstar", "package"));
    decode_matrix(d.ring, field(p, "comparison", "package"));
  }
}

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    auto cut = msg.find("syntax error");
    throw ParseError(cut == std::string::npos ? msg : msg.substr(cut), line, col);
  }
  Document d;
  const Json& v = field(j, "version", "document");
  if (!v.is_string()) throw ParseError("document: version must be a string");
  d.version = v.get<std::string>();
  if (d.version != kVersion) throw ParseError("document: unsupported version '" + d.version + "'");
  d.ring = ring_from_json(field(j, "ring", "document"));
  d.payload = field(j, "payload", "document");
  if (!field(d.payload, "type", "payload").is_string()) throw ParseError("payload: type must be a string");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "version" && it.key() != "ring" && it.key() != "payload")
      throw ParseError("document: unexpected field '" + it.key() + "'");
  try {
    validate(d);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("payload: ") + e.what());
  } catch (const DimensionError& e) {
    throw InvariantError(e.what());
  }
  return d;
}

std::string emit(const Document& d, Format f) {
  Json j{{"version", d.version}, {"ring", ring_to_json(d.ring)}, {"payload", d.payload}};
  return f == Format::Text ? j.dump(2) + "\n" : j.dump() + "\n";
}

}  // namespace kproj::doc
