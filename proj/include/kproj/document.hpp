#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "kproj/duality.hpp"
#include "kproj/flatness.hpp"

namespace kproj::doc {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

inline constexpr const char* kVersion = "kproj-doc/1";

/// Malformed text or structure.  line/column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line;
  std::size_t column;
};

/// Well-formed document whose content breaks a mathematical invariant.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Machine };

/// version + ring + typed payload.  The payload is kept as validated JSON so
/// re-emitting a parsed document reproduces it exactly.
struct Document {
  std::string version = kVersion;
  Ring ring = Ring::integers();
  Json payload;  // object with a "type" field

  std::string type() const { return payload.at("type").get<std::string>(); }
};

Document parse_document(const std::string& text);
std::string emit(const Document& d, Format f = Format::Text);

/// Structural checks on a payload (shapes, canonical entries, d^2 = 0 on the
/// explicit region and one period of each tail).  Throws ParseError or
/// InvariantError.
void validate(const Document& d);

Json ring_to_json(const Ring& r);
Ring ring_from_json(const Json& j);

// Encoders produce payload bodies; the document-level helpers add "type".
Json encode(const Matrix& m);
Json encode(const FPModule& m);
Json encode(const Complex& c);
Json encode(const ChainMap& f);
Json encode(const Homotopy& h);
Json encode(const FlatRelation& r);
Json encode(const FlatCertificate& c);
Json encode(const BuildPtr& node);
Json encode(const ModuleStructure& s);
Json encode(const Window& w);

Matrix decode_matrix(const Ring& r, const Json& j);
FPModule decode_module(const Ring& r, const Json& j);
Complex decode_complex(const Ring& r, const Json& j);
ChainMap decode_chain_map(const Ring& r, const Json& j);
FlatRelation decode_relation(const Ring& r, const Json& j);
FlatCertificate decode_certificate(const Ring& r, const Json& j);
BuildPtr decode_build_node(const Ring& r, const Json& j);
Window decode_window(const Json& j);

/// Document with payload {type, ...body}.
Document make_document(const Ring& r, const std::string& type, Json body);

}  // namespace kproj::doc
