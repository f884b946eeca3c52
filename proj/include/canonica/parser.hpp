#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "canonica/field.hpp"
#include "canonica/polynomial.hpp"

namespace canonica {

class ParseError : public AlgebraError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : AlgebraError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses integer coefficients, identifiers, `*`, `^`, `+`, `-`, parentheses
/// and division by a nonzero integer constant.
template <class K>
Polynomial<K> parse_polynomial(std::string_view text, const PolyRing<K>& ring);

/// Identifiers appearing in `text`, in order of first appearance.
std::vector<std::string> identifiers_in(std::string_view text);

}  // namespace canonica
