#pragma once

// JSON files describing an algebra together with named forms and spans.
//
//   {"dim": n, "brackets": [[i, j, k, c], ...]}
//   {"dim": n, "d": {"1": [[c, [i, j]], ...], ...}, "isotropy": [[row-major n*n], ...]}
//
// optionally with "name", "forms": {"name": {"degree": k, "terms": [[c, [i1..ik]], ...]}}
// and "spans": {"name": [{"degree": k, "terms": ...}, ...]}.  Indices are 1-based.

#include <map>
#include <string>
#include <vector>

#include "g2t/algebra.hpp"
#include "g2t/catalog.hpp"
#include "g2t/kform.hpp"

namespace g2t {

struct AlgebraDocument {
  AlgebraSpec alg;
  std::map<std::string, KForm> forms;
  std::map<std::string, std::vector<KForm>> spans;
};

// Throws ParseError for malformed input and NotLieAlgebra when d^2 != 0.
AlgebraDocument parse_algebra_json(const std::string& text);
AlgebraDocument load_algebra_file(const std::string& path);

// Canonical serialization: sorted keys, terms in basis order, shortest
// round-trip floats.  parse followed by to_canonical_json is the identity
// on its own output.
std::string to_canonical_json(const AlgebraDocument& doc);
AlgebraDocument document_of(const CatalogEntry& entry);

// A single form: either {"degree", "terms"} or a document whose "forms" has
// exactly one entry.
KForm parse_form_json(int dim, const std::string& text);
KForm load_form_file(int dim, const std::string& path);

std::string read_file(const std::string& path);
// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace g2t
