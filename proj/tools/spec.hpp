#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "canonica/rings.hpp"

namespace canonica::cli {

/// Malformed spec text or file (exit code 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RingSpec {
  enum class Kind { Determinantal, Chain, Polynomial };
  Kind kind = Kind::Determinantal;
  /// Characteristic; 0 selects the rationals.
  std::uint32_t p = 32003;
  int m = 0, n = 0, r = 0;
  ChainSpec chain;
  std::vector<std::string> vars, relations;

  std::string field_name() const;
  /// Normalized inline form, e.g. "det 3 2 1" or "chain [triv 2]".
  std::string construction() const;
  /// Hex digest of the field and construction.
  std::string fingerprint() const;
};

/// Inline forms: "det M N R", "chain [triv Q] [powq (f,g) M] [det M N R]",
/// "poly [x,y] [x*y]".
RingSpec parse_inline(const std::string& text);

/// {"field": {...}, "construction": {...}} as documented in docs/report-schema.md.
RingSpec parse_json(const nlohmann::json& j);

/// One token naming an existing file, or the inline text split into tokens.
RingSpec load_spec(const std::vector<std::string>& tokens);

}  // namespace canonica::cli
