// Stable JSON document format for the CLI: schema_version "1", matrices as
// row-major arrays of rows, vectors flat, every entry a canonical residue.
// Parsing is strict so that canonical documents round-trip byte-identically.
#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qudit/decomp.hpp"
#include "qudit/oracle.hpp"
#include "qudit/stabilizer.hpp"

namespace qudit::doc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Malformed input (bad JSON, wrong schema, out-of-range entries): exit 2.
class ParseFailure : public std::runtime_error {
public:
  explicit ParseFailure(const std::string& message)
      : std::runtime_error(message) {}
};

Json parse_text(const std::string& text);
std::string dump(const Json& j);  // canonical text, trailing newline

struct Header {
  std::string kind;
  Int d;
  Int n;
};
Header read_header(const Json& j);

PauliElement parse_pauli(const Json& j);
Json emit_pauli(const PauliElement& x);

CliffordOp parse_clifford(const Json& j);
Json emit_clifford(const CliffordOp& q);
OddCliffordForm parse_clifford_odd(const Json& j);
Json emit_clifford_odd(const OddCliffordForm& q);

StabilizerGenerators parse_stabilizer(const Json& j);
Json emit_stabilizer(const StabilizerGenerators& st);
OddStabilizerForm parse_stabilizer_odd(const Json& j);
Json emit_stabilizer_odd(const OddStabilizerForm& o);

GateSequence parse_gate_sequence(const Json& j);
Json emit_gate_sequence(const GateSequence& seq);

StateExpansion parse_expansion(const Json& j);
Json emit_expansion(const StateExpansion& e);

ResidueMatrix parse_residue_matrix_doc(const Json& j);  // kind "matrix"
Json emit_residue_matrix_doc(const ResidueMatrix& m);

Json emit_smith(const SmithDecomposition& s, Int d);
Json emit_normal_form(const StabilizerGenerators& minimized,
                      const ExpansionForm& ef);

Json emit_dense_operator(const oracle::Operator& u, Int d, Int n);
Json emit_dense_state(const oracle::State& v, Int d, Int n);

}  // namespace qudit::doc
