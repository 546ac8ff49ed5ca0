#ifndef COCALC_EQDSL_HPP
#define COCALC_EQDSL_HPP

#include <string_view>

#include "cocalc/coterm.hpp"

namespace cocalc {

/// Parses the equation-file DSL against a signature. Surface binders are
/// named and resolved to de Bruijn positions here; reference renamings
/// are inferred by matching the referenced unknown's context entry names
/// against the local scope (innermost binding wins), or given explicitly
/// as `S@[x := y]`.
///
///   # the infinite Church numeral body
///   let S : t [f : (0 -> 0), x : 0] = tup(f, sum(S))
///
/// `let NAME : sort [name : sort, ...] = term` declares an unknown whose
/// context entries are listed newest-first (position 0 first). Terms are
/// constructor calls `op(arg, ...)`; an argument that binds variables
/// names them in a bracket prefix `lam([y] y)`. For the n-ary families
/// the index is inferred from the argument count when omitted
/// (`sum(a, b)` means `sum_2(a, b)`). Throws ParseError / Error.
EquationSystem parse_equations(SignaturePtr sig, std::string_view text);

/// Renders a system in the DSL with invented names (v0.. for context
/// entries, b0.. for binders); inverse of parse_equations for systems
/// without embedded coterms. Embedded coterms print as a non-parseable
/// `embed` marker.
std::string print_equation_system(const EquationSystem& es);

}  // namespace cocalc

#endif
