#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "inj/classes.hpp"
#include "inj/linalg.hpp"
#include "inj/signs.hpp"

namespace inj {

// All readers skip blank lines and lines starting with `#`, take one matrix row
// per line, and report errors as ParseError with 1-based line/column.

/// Entries: integers, `p/q` fractions or exact decimals.
QMatrix parse_matrix(std::string_view text);
/// Entries: `0 - + -0 0+ -+ *`.
SignSetMatrix parse_sign_set_matrix(std::string_view text);
/// Entries: `[1,2)`, `(0,inf)`, `(-inf,0]`, `{3/2}`, `(-inf,0)u(0,inf)` or bare numbers.
IntervalBox parse_interval_matrix(std::string_view text);
/// One sign vector (string over `+ - 0`) per line.
std::vector<SignVector> parse_sign_vectors(std::string_view text);

std::string format_matrix(const QMatrix& m);
std::string format_sign_set_matrix(const SignSetMatrix& w);
std::string format_interval_matrix(const IntervalBox& d);
std::string format_sign_vectors(const std::vector<SignVector>& vs);

std::string read_file(const std::string& path);

}  // namespace inj
