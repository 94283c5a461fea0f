// Command-line front end over the JSON document format. Results go to
// stdout; failures are reported as a structured JSON object on stderr with
// exit code 2 (parse), 3 (domain), or 4 (cap).
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qudit/document.hpp"

namespace {

using qudit::CliffordOp;
using qudit::DomainError;
using qudit::GateSequence;
using qudit::Int;
using qudit::PauliElement;
using qudit::StabilizerGenerators;
namespace doc = qudit::doc;
namespace oracle = qudit::oracle;

doc::Json load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw doc::ParseFailure("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return doc::parse_text(buf.str());
}

void print(const doc::Json& j) { std::cout << doc::dump(j); }

struct Options {
  std::string a, b;
  bool odd_form = false;
  bool raw = false;
  bool generic = false;
  Int force_cap = 0;
};

int dispatch(const std::string& command, const Options& opt) {
  if (command == "validate") {
    const doc::Json j = load(opt.a);
    const auto header = doc::read_header(j);
    if (header.kind == "pauli") {
      print(doc::emit_pauli(doc::parse_pauli(j)));
    } else if (header.kind == "clifford") {
      if (opt.odd_form)
        print(doc::emit_clifford_odd(doc::parse_clifford_odd(j)));
      else
        print(doc::emit_clifford(doc::parse_clifford(j)));
    } else if (header.kind == "stabilizer") {
      if (opt.odd_form)
        print(doc::emit_stabilizer_odd(doc::parse_stabilizer_odd(j)));
      else
        print(doc::emit_stabilizer(doc::parse_stabilizer(j)));
    } else if (header.kind == "gate_sequence") {
      print(doc::emit_gate_sequence(doc::parse_gate_sequence(j)));
    } else if (header.kind == "expansion") {
      print(doc::emit_expansion(doc::parse_expansion(j)));
    } else {
      throw doc::ParseFailure("validate expects a pauli, clifford, "
                              "stabilizer, gate_sequence, or expansion "
                              "document");
    }
    return 0;
  }
  if (command == "compose") {
    if (opt.odd_form) {
      const auto outer = doc::parse_clifford_odd(load(opt.a));
      const auto inner = doc::parse_clifford_odd(load(opt.b));
      print(doc::emit_clifford_odd(qudit::odd_compose(outer, inner)));
    } else {
      const auto outer = doc::parse_clifford(load(opt.a));
      const auto inner = doc::parse_clifford(load(opt.b));
      print(doc::emit_clifford(qudit::compose(outer, inner)));
    }
    return 0;
  }
  if (command == "invert") {
    if (opt.odd_form)
      print(doc::emit_clifford_odd(
          qudit::odd_invert(doc::parse_clifford_odd(load(opt.a)))));
    else
      print(doc::emit_clifford(qudit::invert(doc::parse_clifford(load(opt.a)))));
    return 0;
  }
  if (command == "conjugate") {
    const doc::Json xj = load(opt.b);
    const PauliElement x = doc::parse_pauli(xj);
    if (opt.odd_form) {
      const auto q = doc::parse_clifford_odd(load(opt.a));
      print(doc::emit_pauli(qudit::odd_conjugate_pauli(q, x)));
    } else {
      const auto q = doc::parse_clifford(load(opt.a));
      print(doc::emit_pauli(qudit::conjugate_pauli(q, x)));
    }
    return 0;
  }
  if (command == "decompose") {
    print(doc::emit_gate_sequence(
        qudit::decompose(doc::parse_clifford(load(opt.a)))));
    return 0;
  }
  if (command == "fold") {
    print(doc::emit_clifford(qudit::fold(doc::parse_gate_sequence(load(opt.a)))));
    return 0;
  }
  if (command == "canonicalize") {
    const auto st = doc::parse_stabilizer(load(opt.a));
    const auto minimized = qudit::minimize_generators(st);
    print(doc::emit_normal_form(minimized, qudit::normal_form(minimized)));
    return 0;
  }
  if (command == "expand") {
    if (opt.odd_form) {
      const auto o = doc::parse_stabilizer_odd(load(opt.a));
      print(doc::emit_expansion(qudit::odd_expand(o)));
      return 0;
    }
    const auto st = doc::parse_stabilizer(load(opt.a));
    if (opt.raw)
      print(doc::emit_expansion(qudit::expand_raw(st)));
    else if (opt.generic)
      print(doc::emit_expansion(qudit::expand_generic(st)));
    else
      print(doc::emit_expansion(qudit::expand(st)));
    return 0;
  }
  if (command == "simulate") {
    const Int cap = opt.force_cap > 0 ? opt.force_cap
                                      : oracle::kDefaultDimensionCap;
    const doc::Json j = load(opt.a);
    const auto header = doc::read_header(j);
    if (header.kind == "pauli") {
      const auto x = doc::parse_pauli(j);
      print(doc::emit_dense_operator(oracle::pauli_operator(x, cap), x.d(),
                                     x.n()));
    } else if (header.kind == "clifford") {
      const auto q = doc::parse_clifford(j);
      print(doc::emit_dense_operator(
          oracle::sequence_operator(qudit::decompose(q), cap), q.d(), q.n()));
    } else if (header.kind == "gate_sequence") {
      const auto seq = doc::parse_gate_sequence(j);
      print(doc::emit_dense_operator(oracle::sequence_operator(seq, cap),
                                     seq.d, seq.n));
    } else if (header.kind == "stabilizer") {
      const auto st = doc::parse_stabilizer(j);
      print(doc::emit_dense_state(
          oracle::state_from_expansion(qudit::expand(st), cap), st.d(),
          st.n()));
    } else {
      throw doc::ParseFailure("simulate expects a pauli, clifford, "
                              "gate_sequence, or stabilizer document");
    }
    return 0;
  }
  if (command == "snf") {
    const auto m = doc::parse_residue_matrix_doc(load(opt.a));
    print(doc::emit_smith(qudit::smith_normal_form(m), m.modulus()));
    return 0;
  }
  throw doc::ParseFailure("unknown command: " + command);
}

int report_parse_error(const std::string& message) {
  doc::Json err;
  err["error"] = "ParseError";
  err["message"] = message;
  std::cerr << doc::dump(err);
  return 2;
}

int report_domain_error(const DomainError& e) {
  const bool cap = e.code() == qudit::errc::dimension_cap;
  doc::Json err;
  err["error"] = cap ? "CapExceeded" : "DomainError";
  err["name"] = e.name();
  err["message"] = e.what();
  std::cerr << doc::dump(err);
  return cap ? 4 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qudit - symbolic stabilizer engine for qudits of any dimension d.\n"
      "Documents are JSON files; see README.md for the format."};
  app.require_subcommand(1);

  Options opt;
  auto add_input = [&](CLI::App* cmd, const char* name) {
    cmd->add_option(name, opt.a, "input document")->required();
  };

  auto* validate = app.add_subcommand(
      "validate", "Check a document's invariants and re-emit it canonically.\n"
                  "Example: qudit validate pauli.json");
  add_input(validate, "file");
  validate->add_flag("--odd-form", opt.odd_form,
                     "read phases in the odd-d half representation");

  auto* compose = app.add_subcommand(
      "compose", "Compose two Clifford documents (A after B).\n"
                 "Example: qudit compose a.json b.json");
  add_input(compose, "a");
  compose->add_option("b", opt.b, "inner operation")->required();
  compose->add_flag("--odd-form", opt.odd_form,
                    "use the odd-d composition formulas");

  auto* invert = app.add_subcommand(
      "invert", "Invert a Clifford document.\n"
                "Example: qudit invert q.json");
  add_input(invert, "q");
  invert->add_flag("--odd-form", opt.odd_form,
                   "use the odd-d inversion formula");

  auto* conjugate = app.add_subcommand(
      "conjugate", "Image of a Pauli under conjugation by a Clifford.\n"
                   "Example: qudit conjugate q.json x.json");
  add_input(conjugate, "q");
  conjugate->add_option("x", opt.b, "pauli document")->required();
  conjugate->add_flag("--odd-form", opt.odd_form,
                      "use the odd-d conjugation formula");

  auto* decompose = app.add_subcommand(
      "decompose", "Decompose a Clifford into elementary gates.\n"
                   "Example: qudit decompose q.json");
  add_input(decompose, "q");

  auto* fold = app.add_subcommand(
      "fold", "Fold a gate sequence back into a Clifford document.\n"
              "Example: qudit fold seq.json");
  add_input(fold, "seq");

  auto* canonicalize = app.add_subcommand(
      "canonicalize", "Minimize a stabilizer and report its normal form.\n"
                      "Example: qudit canonicalize st.json");
  add_input(canonicalize, "st");

  auto* expand = app.add_subcommand(
      "expand", "Standard-basis expansion of a stabilizer state.\n"
                "Example: qudit expand st.json");
  add_input(expand, "st");
  expand->add_flag("--raw", opt.raw, "keep repeated labels (all t in Z_d^n)");
  expand->add_flag("--generic", opt.generic,
                   "use the generic sum over t in Z_d^m");
  expand->add_flag("--odd-form", opt.odd_form,
                   "expand through the odd-d formulas");

  auto* simulate = app.add_subcommand(
      "simulate", "Dense unitary or state vector for a document.\n"
                  "Example: qudit simulate q.json --force-cap 8192");
  add_input(simulate, "obj");
  simulate->add_option("--force-cap", opt.force_cap,
                       "override the d^n cap (default 4096)");

  auto* snf = app.add_subcommand(
      "snf", "Smith normal form of a matrix document.\n"
             "Example: qudit snf a.json");
  add_input(snf, "a");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return report_parse_error(e.what());
  }

  if (opt.raw && opt.generic)
    return report_parse_error("--raw and --generic are mutually exclusive");
  if (opt.odd_form && (opt.raw || opt.generic))
    return report_parse_error("--odd-form expansion is deduplicated only");

  try {
    return dispatch(app.get_subcommands().front()->get_name(), opt);
  } catch (const doc::ParseFailure& e) {
    return report_parse_error(e.what());
  } catch (const DomainError& e) {
    return report_domain_error(e);
  } catch (const std::exception& e) {
    doc::Json err;
    err["error"] = "DomainError";
    err["name"] = "InternalError";
    err["message"] = e.what();
    std::cerr << doc::dump(err);
    return 3;
  }
}
