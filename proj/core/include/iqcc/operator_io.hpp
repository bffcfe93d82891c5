/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <iosfwd>
#include <string>

#include "iqcc/pauli.hpp"

namespace iqcc {

/// Operator text format:
///   nqubits N
///   <re> <im> <word>
/// where <word> is whitespace-separated X<i>|Y<i>|Z<i> factors or the single
/// token I, and the coefficients are plain Pauli (XYZ alphabet) values.
/// Lines starting with '#' are comments. Malformed input reports the line
/// number. parse(serialize(op)) == op bit-exactly.
QubitOperator parse_operator(std::istream& in);
QubitOperator parse_operator_string(const std::string& text);
QubitOperator load_operator(const std::string& path);

/// Deterministic order: lexicographic by (x_mask, z_mask); coefficients
/// printed with 17 significant digits so doubles round-trip exactly.
void serialize_operator(const QubitOperator& op, std::ostream& out);
std::string serialize_operator_string(const QubitOperator& op);
void save_operator(const QubitOperator& op, const std::string& path);

}  // namespace iqcc
