#pragma once

#include <string>

#include "bdp/gadget.hpp"
#include "bdp/instance.hpp"
#include "bdp/validate.hpp"

namespace bdp {

// JSON documents with exact "num/den" rationals; no floating point on the
// wire. Emission is canonical: sorted keys, lowest-terms rationals, stable
// indentation — emitting the same value twice gives identical bytes, and
// emit(parse(text)) is a fixed point for any accepted text.
//
// Point literals: a bare integer is a vertex id, [edge_index, "num/den"] is
// an interior point. Parsing canonicalizes offsets 0 and w to vertices.

// Instance documents ("bdp-instance/1"). Parsing enforces every graph and
// instance invariant; errors carry the offending field.
Instance parse_instance(const std::string& text);
std::string emit_instance(const Instance& inst);

// Result documents ("bdp-result/1"). The schedule field is present exactly
// for the two feasible decisions. When `bind` is given, schedule points are
// canonicalized and range-checked against that graph.
SolveResult parse_result(const std::string& text, const Graph* bind = nullptr);
std::string emit_result(const SolveResult& res);

// Validation reports ("bdp-report/1"), emit only.
std::string emit_report(const ValidationReport& rep, const Rational& gamma);

// Agent-role maps for reduction gadgets ("bdp-rolemap/1"), emit only.
std::string emit_rolemap(const GadgetInstance& g);

}  // namespace bdp
