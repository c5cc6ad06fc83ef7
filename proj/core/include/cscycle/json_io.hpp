#pragma once

// JSON views of the core values (kind-tagged trees for syntax, structured
// reports for verdicts and cycle checks) plus loaders for theory files and
// clause sets. All functions exchange serialized strings so the JSON library
// stays an implementation detail.

#include <string>

#include "cscycle/cycles.hpp"
#include "cscycle/descent.hpp"
#include "cscycle/entailment.hpp"
#include "cscycle/models.hpp"
#include "cscycle/normalize.hpp"
#include "cscycle/syntax.hpp"
#include "cscycle/theories.hpp"

namespace csc {

std::string to_json(const Term& t);
std::string to_json(const Literal& l);
std::string to_json(const Clause& c);
std::string to_json(const ClauseSet& c);
std::string to_json(const Formula& f);
std::string to_json(const Verdict& v);
std::string to_json(const CycleReport& r);
std::string to_json(const RefutationCertificate& r);
std::string to_json(const BoundedReport& r);
std::string to_json(const ModelElement& e);
std::string to_json(const DescentResult& r);
std::string to_json(const ShiftResult& r);

/// Parses a kind-tagged formula tree.
Formula formula_from_json(const std::string& text, const Language& lang);
/// Parses either the JSON clause-set object or, as a fallback, the line-based
/// text format.
ClauseSet clause_set_from_text(const std::string& text, const Language& lang);

/// Theory file: {"name": ..., "language": {"functions": {...},
/// "predicates": {...}, "eta": bool}, "axioms": ["formula", ...]}.
Theory theory_from_json(const std::string& text);

/// Element literal of the form value^[type], e.g. 3^[1] or -2^[2].
ModelElement parse_element(const std::string& text);

}  // namespace csc
