#pragma once

#include <string>
#include <vector>

#include "leechcert/lattice.hpp"
#include "leechcert/radial.hpp"
#include "leechcert/scheme.hpp"

namespace leechcert {

// Coefficient files:
//   dim 24
//   scale 40          (the function is divided by 10^40)
//   <c_0>
//   <c_1> ...         integers, coefficient of i! L_i^{n/2-1}
// Blank lines and '#' comments are ignored.  Throws FormatError.
RadialFn parse_coefficients(const std::string& text);
std::string format_coefficients(const RadialFn& f);  // scale must be a power of 10

// Root files: one exact rational per line ("p/q" or a decimal literal).
// Lines starting with "h " list near roots of f-hat; everything else is an
// f root, in order starting with the sign change.
RootHints parse_roots(const std::string& text);
std::string format_roots(const RootHints& h);

// Lattice files: "n scale_sq" then n rows of n integers (basis rows).
LatticeData parse_lattice(const std::string& text, const std::string& name = "file");
std::string format_lattice(const LatticeData& L);

std::string read_file(const std::string& path);  // throws InputError
void write_file(const std::string& path, const std::string& content);

}  // namespace leechcert
