/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/operator_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iqcc {

namespace {

[[noreturn]] void fail(size_t line_no, const std::string& what) {
  throw std::invalid_argument("operator file, line " + std::to_string(line_no) +
                              ": " + what);
}

double parse_double(const std::string& tok, size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    fail(line_no, "bad number '" + tok + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

QubitOperator parse_operator(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  bool have_header = false;
  uint32_t n_qubits = 0;
  QubitOperator op;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank or comment-only

    if (!have_header) {
      if (tok != "nqubits") fail(line_no, "expected 'nqubits N' header");
      long long n = -1;
      if (!(ls >> n) || n < 0) fail(line_no, "bad qubit count");
      std::string extra;
      if (ls >> extra) fail(line_no, "trailing tokens after header");
      n_qubits = static_cast<uint32_t>(n);
      op = QubitOperator(n_qubits);
      have_header = true;
      continue;
    }

    const double re = parse_double(tok, line_no);
    if (!(ls >> tok)) fail(line_no, "missing imaginary part");
    const double im = parse_double(tok, line_no);

    PauliWord word(n_qubits);
    bool saw_identity = false;
    size_t n_factors = 0;
    while (ls >> tok) {
      ++n_factors;
      if (tok == "I") {
        saw_identity = true;
        continue;
      }
      if (tok.size() < 2 || (tok[0] != 'X' && tok[0] != 'Y' && tok[0] != 'Z'))
        fail(line_no, "bad factor '" + tok + "'");
      uint32_t q = 0;
      auto [ptr, ec] =
          std::from_chars(tok.data() + 1, tok.data() + tok.size(), q);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        fail(line_no, "bad factor '" + tok + "'");
      if (q >= n_qubits)
        fail(line_no, "qubit index " + std::to_string(q) + " >= nqubits " +
                          std::to_string(n_qubits));
      if (word.z_bit(q) || word.x_bit(q))
        fail(line_no, "repeated qubit " + std::to_string(q));
      switch (tok[0]) {
        case 'X': word.set_x(q); break;
        case 'Y': word.set_x(q); word.set_z(q); break;
        case 'Z': word.set_z(q); break;
      }
    }
    if (n_factors == 0) fail(line_no, "missing Pauli word");
    if (saw_identity && n_factors > 1)
      fail(line_no, "'I' cannot be combined with other factors");
    op.add_term(word, zx_coeff(word, Complex{re, im}));
  }
  if (!have_header)
    throw std::invalid_argument("operator file: missing 'nqubits N' header");
  return op;
}

QubitOperator parse_operator_string(const std::string& text) {
  std::istringstream in(text);
  return parse_operator(in);
}

QubitOperator load_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open operator file '" + path + "'");
  return parse_operator(in);
}

void serialize_operator(const QubitOperator& op, std::ostream& out) {
  out << "nqubits " << op.n_qubits() << "\n";
  for (const auto& term : op.sorted_terms()) {
    const Complex c = pauli_coeff(term.word, term.coeff);
    out << format_double(c.real()) << ' ' << format_double(c.imag()) << ' '
        << term.word.str() << "\n";
  }
}

std::string serialize_operator_string(const QubitOperator& op) {
  std::ostringstream out;
  serialize_operator(op, out);
  return out.str();
}

void save_operator(const QubitOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write operator file '" + path + "'");
  serialize_operator(op, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace iqcc
