#include "qudit/document.hpp"
#include <cmath>

#include <algorithm>
#include <cstdio>

namespace qudit::doc {

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw ParseFailure(message);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Int get_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    bad(std::string(what) + " must be an integer");
  return j.get<Int>();
}

Int get_residue(const Json& j, Int bound, const char* what) {
  const Int v = get_int(j, what);
  if (v < 0 || v >= bound)
    bad(std::string(what) + " must be a canonical residue in [0, " +
        std::to_string(bound) + ")");
  return v;
}

std::vector<Int> get_vector(const Json& j, Int len, Int bound,
                            const char* what) {
  if (!j.is_array() || static_cast<Int>(j.size()) != len)
    bad(std::string(what) + " must be an array of length " +
        std::to_string(len));
  std::vector<Int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(get_residue(e, bound, what));
  return out;
}

ResidueMatrix get_matrix(const Json& j, Int rows, Int cols, Int modulus,
                         const char* what) {
  if (!j.is_array() || static_cast<Int>(j.size()) != rows)
    bad(std::string(what) + " must have " + std::to_string(rows) + " rows");
  ResidueMatrix m(rows, cols, modulus);
  for (Int i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Int>(row.size()) != cols)
      bad(std::string(what) + " rows must have length " +
          std::to_string(cols));
    for (Int c = 0; c < cols; ++c)
      m.set(i, c,
            get_residue(row.at(static_cast<std::size_t>(c)), modulus, what));
  }
  return m;
}

Json matrix_json(const ResidueMatrix& m) {
  Json rows = Json::array();
  for (Int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (Int e : v) out.push_back(e);
  return out;
}

void check_keys(const Json& j, std::initializer_list<const char*> keys,
                const char* what) {
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
          return key == k;
        }) == keys.end())
      bad(std::string(what) + " has unknown field '" + key + "'");
  }
}

Json header_json(const char* kind, Int d, Int n) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["d"] = d;
  j["n"] = n;
  return j;
}

const Json& payload_of(const Json& j) { return field(j, "payload"); }

double snap16(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return std::strtod(buf, nullptr);
}

Json complex_json(std::complex<double> z) {
  auto clean = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : snap16(v); };
  return Json::array({clean(z.real()), clean(z.imag())});
}

}  // namespace

Json parse_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("input is not valid JSON");
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Header read_header(const Json& j) {
  check_keys(j, {"schema_version", "kind", "d", "n", "payload"}, "document");
  const auto& version = field(j, "schema_version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    bad("schema_version must be \"1\"");
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) bad("kind must be a string");
  const Int d = get_int(field(j, "d"), "d");
  const Int n = get_int(field(j, "n"), "n");
  if (d < 2 || d > kMaxModulus) bad("d must lie in [2, 32768]");
  if (n < 0 || 2 * n > kMaxDimension) bad("n must lie in [0, 512]");
  return {kind.get<std::string>(), d, n};
}

static Header read_header_kind(const Json& j, const char* kind) {
  const Header h = read_header(j);
  if (h.kind != kind)
    bad(std::string("expected kind \"") + kind + "\", found \"" + h.kind +
        "\"");
  if (h.n < 1) bad("n must be at least 1");
  return h;
}

PauliElement parse_pauli(const Json& j) {
  const Header h = read_header_kind(j, "pauli");
  const auto& p = payload_of(j);
  check_keys(p, {"a", "delta"}, "pauli payload");
  auto a = get_vector(field(p, "a"), 2 * h.n, h.d, "a");
  const Int delta = get_residue(field(p, "delta"), 2 * h.d, "delta");
  return PauliElement(h.d, h.n, std::move(a), delta);
}

Json emit_pauli(const PauliElement& x) {
  Json j = header_json("pauli", x.d(), x.n());
  j["payload"] = Json{{"a", vector_json(x.a())}, {"delta", x.delta()}};
  return j;
}

CliffordOp parse_clifford(const Json& j) {
  const Header h = read_header_kind(j, "clifford");
  const auto& p = payload_of(j);
  check_keys(p, {"c", "h"}, "clifford payload");
  auto c = get_matrix(field(p, "c"), 2 * h.n, 2 * h.n, h.d, "c");
  auto hv = get_vector(field(p, "h"), 2 * h.n, 2 * h.d, "h");
  return CliffordOp(std::move(c), std::move(hv));
}

Json emit_clifford(const CliffordOp& q) {
  Json j = header_json("clifford", q.d(), q.n());
  j["payload"] = Json{{"c", matrix_json(q.c())}, {"h", vector_json(q.h())}};
  return j;
}

OddCliffordForm parse_clifford_odd(const Json& j) {
  const Header h = read_header_kind(j, "clifford");
  if (h.d % 2 == 0) bad("the odd form requires odd d");
  const auto& p = payload_of(j);
  check_keys(p, {"c", "g"}, "odd clifford payload");
  auto c = get_matrix(field(p, "c"), 2 * h.n, 2 * h.n, h.d, "c");
  auto g = get_vector(field(p, "g"), 2 * h.n, h.d, "g");
  OddCliffordForm out{h.d, h.n, std::move(c), std::move(g)};
  from_odd_form(out);  // validates symplecticity
  return out;
}

Json emit_clifford_odd(const OddCliffordForm& q) {
  Json j = header_json("clifford", q.d, q.n);
  j["payload"] = Json{{"c", matrix_json(q.c)}, {"g", vector_json(q.g)}};
  return j;
}

StabilizerGenerators parse_stabilizer(const Json& j) {
  const Header h = read_header_kind(j, "stabilizer");
  const auto& p = payload_of(j);
  check_keys(p, {"s", "f"}, "stabilizer payload");
  const auto& srows = field(p, "s");
  if (!srows.is_array() || srows.empty() || !srows.at(0).is_array() ||
      srows.at(0).empty())
    bad("s must be a nonempty matrix");
  const Int m = static_cast<Int>(srows.at(0).size());
  auto s = get_matrix(srows, 2 * h.n, m, h.d, "s");
  auto f = get_vector(field(p, "f"), m, 2 * h.d, "f");
  return StabilizerGenerators(std::move(s), std::move(f));
}

Json emit_stabilizer(const StabilizerGenerators& st) {
  Json j = header_json("stabilizer", st.d(), st.n());
  j["payload"] = Json{{"s", matrix_json(st.s())}, {"f", vector_json(st.f())}};
  return j;
}

OddStabilizerForm parse_stabilizer_odd(const Json& j) {
  const Header h = read_header_kind(j, "stabilizer");
  if (h.d % 2 == 0) bad("the odd form requires odd d");
  const auto& p = payload_of(j);
  check_keys(p, {"s", "b"}, "odd stabilizer payload");
  const auto& srows = field(p, "s");
  if (!srows.is_array() || srows.empty() || !srows.at(0).is_array() ||
      srows.at(0).empty())
    bad("s must be a nonempty matrix");
  const Int m = static_cast<Int>(srows.at(0).size());
  auto s = get_matrix(srows, 2 * h.n, m, h.d, "s");
  auto b = get_vector(field(p, "b"), m, h.d, "b");
  OddStabilizerForm out{h.d, h.n, m, std::move(s), std::move(b)};
  from_odd_stabilizer_form(out);  // validates
  return out;
}

Json emit_stabilizer_odd(const OddStabilizerForm& o) {
  Json j = header_json("stabilizer", o.d, o.n);
  j["payload"] = Json{{"s", matrix_json(o.s)}, {"b", vector_json(o.b)}};
  return j;
}

GateSequence parse_gate_sequence(const Json& j) {
  const Header h = read_header_kind(j, "gate_sequence");
  const auto& p = payload_of(j);
  check_keys(p, {"gates"}, "gate_sequence payload");
  const auto& gates = field(p, "gates");
  if (!gates.is_array()) bad("gates must be an array");
  GateSequence seq{h.d, h.n, {}};
  auto target = [&](const Json& g, const char* key) {
    const Int t = get_int(field(g, key), key);
    if (t < 1 || t > h.n) bad(std::string(key) + " must lie in [1, n]");
    return t;
  };
  for (const auto& g : gates) {
    const auto& kind = field(g, "kind");
    if (!kind.is_string()) bad("gate kind must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "qudit_swap") {
      check_keys(g, {"kind", "i", "j"}, "qudit_swap");
      seq.gates.push_back(
          ElementaryGate::qudit_swap(target(g, "i"), target(g, "j")));
    } else if (k == "scale_row") {
      check_keys(g, {"kind", "i", "r"}, "scale_row");
      seq.gates.push_back(ElementaryGate::scale_row(
          target(g, "i"), get_residue(field(g, "r"), h.d, "r")));
    } else if (k == "add_row") {
      check_keys(g, {"kind", "i", "j", "g"}, "add_row");
      seq.gates.push_back(
          ElementaryGate::add_row(target(g, "i"), target(g, "j"),
                                  get_residue(field(g, "g"), h.d, "g")));
    } else if (k == "fourier") {
      check_keys(g, {"kind", "i"}, "fourier");
      seq.gates.push_back(ElementaryGate::fourier(target(g, "i")));
    } else if (k == "fourier_inverse") {
      check_keys(g, {"kind", "i"}, "fourier_inverse");
      seq.gates.push_back(ElementaryGate::fourier_inverse(target(g, "i")));
    } else if (k == "phase_power") {
      check_keys(g, {"kind", "i", "g"}, "phase_power");
      seq.gates.push_back(ElementaryGate::phase_power(
          target(g, "i"), get_residue(field(g, "g"), h.d, "g")));
    } else if (k == "pauli_correction") {
      check_keys(g, {"kind", "a"}, "pauli_correction");
      seq.gates.push_back(ElementaryGate::pauli_correction(
          get_vector(field(g, "a"), 2 * h.n, h.d, "a")));
    } else {
      bad("unknown gate kind '" + k + "'");
    }
  }
  return seq;
}

Json emit_gate_sequence(const GateSequence& seq) {
  Json j = header_json("gate_sequence", seq.d, seq.n);
  Json gates = Json::array();
  for (const auto& g : seq.gates) {
    Json e;
    switch (g.kind) {
      case GateKind::qudit_swap:
        e = Json{{"kind", "qudit_swap"}, {"i", g.i}, {"j", g.j}};
        break;
      case GateKind::scale_row:
        e = Json{{"kind", "scale_row"}, {"i", g.i}, {"r", g.factor}};
        break;
      case GateKind::add_row:
        e = Json{{"kind", "add_row"}, {"i", g.i}, {"j", g.j}, {"g", g.factor}};
        break;
      case GateKind::fourier:
        e = Json{{"kind", "fourier"}, {"i", g.i}};
        break;
      case GateKind::fourier_inverse:
        e = Json{{"kind", "fourier_inverse"}, {"i", g.i}};
        break;
      case GateKind::phase_power:
        e = Json{{"kind", "phase_power"}, {"i", g.i}, {"g", g.factor}};
        break;
      case GateKind::pauli_correction:
        e = Json{{"kind", "pauli_correction"}, {"a", vector_json(g.correction)}};
        break;
    }
    gates.push_back(std::move(e));
  }
  j["payload"] = Json{{"gates", std::move(gates)}};
  return j;
}

StateExpansion parse_expansion(const Json& j) {
  const Header h = read_header_kind(j, "expansion");
  const auto& p = payload_of(j);
  check_keys(p, {"terms", "normalization"}, "expansion payload");
  const auto& terms = field(p, "terms");
  if (!terms.is_array() || terms.empty()) bad("terms must be nonempty");
  StateExpansion out{h.d, h.n, {}, 0.0};
  for (const auto& t : terms) {
    check_keys(t, {"label", "zeta_exponent"}, "expansion term");
    out.terms.push_back(
        {get_residue(field(t, "zeta_exponent"), 2 * h.d, "zeta_exponent"),
         get_vector(field(t, "label"), h.n, h.d, "label")});
  }
  const auto& norm = field(p, "normalization");
  if (!norm.is_number()) bad("normalization must be a number");
  out.normalization = norm.get<double>();
  return out;
}

Json emit_expansion(const StateExpansion& e) {
  Json j = header_json("expansion", e.d, e.n);
  Json terms = Json::array();
  for (const auto& t : e.terms)
    terms.push_back(Json{{"label", vector_json(t.label)},
                         {"zeta_exponent", t.zeta_exponent}});
  j["payload"] =
      Json{{"terms", std::move(terms)}, {"normalization", e.normalization}};
  return j;
}

ResidueMatrix parse_residue_matrix_doc(const Json& j) {
  const Header h = read_header(j);
  if (h.kind != "matrix") bad("expected kind \"matrix\"");
  const auto& p = payload_of(j);
  check_keys(p, {"entries"}, "matrix payload");
  const auto& rows = field(p, "entries");
  if (!rows.is_array() || rows.empty() || !rows.at(0).is_array() ||
      rows.at(0).empty())
    bad("entries must be a nonempty matrix");
  const Int r = static_cast<Int>(rows.size());
  const Int c = static_cast<Int>(rows.at(0).size());
  if (r > kMaxDimension || c > kMaxDimension)
    bad("matrix dimensions exceed 1024");
  return get_matrix(rows, r, c, h.d, "entries");
}

Json emit_residue_matrix_doc(const ResidueMatrix& m) {
  Json j = header_json("matrix", m.modulus(), 0);
  j["payload"] = Json{{"entries", matrix_json(m)}};
  return j;
}

Json emit_smith(const SmithDecomposition& s, Int d) {
  Json j = header_json("smith", d, 0);
  j["payload"] = Json{{"f", matrix_json(s.f)},
                      {"k", matrix_json(s.k)},
                      {"l", matrix_json(s.l)},
                      {"rank_r", s.rank_r}};
  return j;
}

Json emit_normal_form(const StabilizerGenerators& minimized,
                      const ExpansionForm& ef) {
  Json j = header_json("stabilizer_normal_form", ef.d, ef.n);
  j["payload"] = Json{{"s", matrix_json(minimized.s())},
                      {"f", vector_json(minimized.f())},
                      {"normal_form",
                       Json{{"t", matrix_json(ef.t)},
                            {"r", matrix_json(ef.r)},
                            {"q", matrix_json(ef.q)},
                            {"b", matrix_json(ef.b)},
                            {"f_prime", vector_json(ef.f_prime)},
                            {"q_bar", vector_json(ef.q_bar)},
                            {"q_vec", vector_json(ef.q_vec)},
                            {"m", matrix_json(ef.m_form)},
                            {"p", vector_json(ef.p)},
                            {"x_star", vector_json(ef.x_star)},
                            {"rank_r", ef.rank_r}}}};
  return j;
}

Json emit_dense_operator(const oracle::Operator& u, Int d, Int n) {
  Json j = header_json("dense_operator", d, n);
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < u.cols(); ++c)
      row.push_back(complex_json(u(i, c)));
    rows.push_back(std::move(row));
  }
  j["payload"] = Json{{"dim", static_cast<Int>(u.rows())},
                      {"entries", std::move(rows)}};
  return j;
}

Json emit_dense_state(const oracle::State& v, Int d, Int n) {
  Json j = header_json("dense_state", d, n);
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    amps.push_back(complex_json(v(i)));
  j["payload"] =
      Json{{"dim", static_cast<Int>(v.size())}, {"amplitudes", std::move(amps)}};
  return j;
}

}  // namespace qudit::doc
