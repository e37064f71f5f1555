#pragma once

#include <json.hpp>

#include "ssv/report.hpp"

namespace ssv {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers only when they are exactly
// representable in a double (|n| < 2^53); anything larger becomes a decimal
// string.  Parsers accept either form.
Json big_to_json(const BigInt& n);
BigInt big_from_json(const Json& j);

// Rationals with denominator 1 follow the integer rule; otherwise "num/den".
Json rat_to_json(const BigRat& q);
BigRat rat_from_json(const Json& j);

std::string kind_to_string(ModuliKind kind);
ModuliKind kind_from_string(const std::string& s);
std::string variant_to_string(K3Variant variant);
K3Variant variant_from_string(const std::string& s);

Json latvec_to_json(const LatVec& x);
LatVec latvec_from_json(const Json& j);

Json lattice_to_json(const IntLattice& L);
IntLattice lattice_from_json(const Json& j);

Json mukai_to_json(const MukaiVector& v);
MukaiVector mukai_from_json(const Json& j);

Json twisted_to_json(const TwistedMukaiVector& v);
TwistedMukaiVector twisted_from_json(const Json& j, Int p);   // re-validates via make_twisted

Json chain_to_json(const TransformChain& chain);
TransformChain chain_from_json(const Json& j);

Json elliptic_to_json(const EllipticWitness& wit);
EllipticWitness elliptic_from_json(const Json& j);

Json untwist_to_json(const UntwistWitness& wit);
UntwistWitness untwist_from_json(const Json& j, Int p);

Json validation_to_json(const LatticeValidation& check);
Json k3_to_json(const SSK3Lattice& X);
Json abelian_to_json(const SSAbelianLattice& A);
Json audit_rows_to_json(const std::vector<AuditRow>& rows);

Json slopes_to_json(const SlopeMultiset& s);      // [["1/2", 4], ...]
SlopeMultiset slopes_from_json(const Json& j);
Json polygon_to_json(const NewtonPolygon& np);
NewtonPolygon polygon_from_json(const Json& j);   // validated on the way in

Json motive_to_json(const SSMotive& m);
SSMotive motive_from_json(const Json& j);
Json betti_to_json(const BettiVector& b);
BettiVector betti_from_json(const Json& j);
Json partition_to_json(const Partition& lambda);
Json kummer_audit_to_json(const KummerAudit& audit);
Json chow_to_json(const ChowReport& report);
Json moduli_to_json(const ModuliReport& report);

Json report_to_json(const ReportBundle& bundle);

BatchSpec batch_spec_from_json(const Json& j);
Json batch_to_json(const BatchResult& result);

// Minimal TOML reader covering flat grid files: `key = value` lines where the
// value is an integer, a quoted string, or a one-level array of those.
// Comments start with '#'.  Tables and nested arrays are rejected.
Json toml_grid_to_json(const std::string& text);

// Dispatches on the first non-space character: '{' means JSON, anything else
// is treated as TOML.
BatchSpec batch_spec_from_text(const std::string& text);

}  // namespace ssv
