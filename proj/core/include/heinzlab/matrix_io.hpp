#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "heinzlab/complex_matrix.hpp"

namespace heinzlab {

// Matrix document: a JSON object with fields
//   rows: positive integer
//   cols: positive integer
//   data: row-major list of [re, im] pairs of decimal floating-point literals
// Values round-trip to the nearest representable double.
//
// Triple document: a JSON object {"A": <matrix>, "B": <matrix>, "X": <matrix>}.

std::string serialize_matrix(const ComplexMatrix& m);
ComplexMatrix parse_matrix(std::string_view text);  // throws IoError / DomainError

struct TripleDocument {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix x;
};

std::string serialize_triple(const TripleDocument& t);
TripleDocument parse_triple(std::string_view text);

/// True if the document looks like a triple (has an "A" field).
bool is_triple_document(std::string_view text);

std::string read_file(const std::string& path);               // throws IoError
void write_file(const std::string& path, std::string_view v);  // throws IoError

}  // namespace heinzlab
