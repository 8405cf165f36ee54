#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "curvcone/matrix.hpp"
#include "curvcone/tensorspace.hpp"

namespace curvcone {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON operator file: {"n", "basis": "plucker-lex", "entries", "signature"?}.
struct OperatorFile {
  int n = 0;
  /// C(n,2) x C(n,2); may be non-symmetric only when a signature is given.
  Matrix<Rat> entries;
  std::optional<int> signature;

  /// Symmetric form; throws ParseError when the entries are not symmetric.
  ModCurvOp op() const;
};

/// Throws ParseError on malformed input and DimensionError on size mismatch.
OperatorFile parse_operator(std::istream& in);
OperatorFile parse_operator_string(const std::string& text);
/// Throws std::ios_base::failure when the file cannot be read.
OperatorFile read_operator_file(const std::string& path);

void write_operator(std::ostream& out, const OperatorFile& file);
std::string serialize_operator(const OperatorFile& file);
OperatorFile to_file(const ModCurvOp& op, std::optional<int> signature = std::nullopt);

}  // namespace curvcone
