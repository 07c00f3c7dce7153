#pragma once

#include <string>

#include "json.hpp"

#include "ffdioph/bounds.hpp"
#include "ffdioph/diophantine.hpp"
#include "ffdioph/fractal_lower.hpp"

namespace ffdioph {

using Json = nlohmann::ordered_json;

// Field: {"p":2,"k":1} or {"p":2,"k":2,"modulus":[1,1,1]}.
Json field_to_json(const Field& F);
FieldPtr field_from_json(const Json& j);

// Polynomials: coefficient arrays low to high; x^2+1 over F_2 is [1,0,1].
Json poly_to_json(const Poly& f);
Poly poly_from_json(const FieldPtr& F, const Json& j);

// Laurent: {"lead_exp":int, "coeffs":[...], "prec":int,
//           "rational": optional [f, g]}.
Json laurent_to_json(const Laurent& v);
Laurent laurent_from_json(const FieldPtr& F, const Json& j);

// Lattices: {"d":int, "denom":[...], "columns":[[entry arrays]]};
// reduced form adds {"minima":[q-exponents]}.
Json lattice_to_json(const LatticeBasis& basis);
LatticeBasis lattice_from_json(const FieldPtr& F, const Json& j);
Json reduced_lattice_to_json(const ReducedLattice& rl);

Json approx_pair_to_json(const ApproxPair& u);
ApproxPair approx_pair_from_json(const FieldPtr& F, const Json& j);

// Best-approximation transcript: ordered entries with coefficient arrays and
// the quality as a q-exponent (null for an exact hit).
Json best_approx_seq_to_json(const BestApproxSeq& seq);

Json di_certificate_to_json(const Field& F, const DICertificate& cert);
DICertificate di_certificate_from_json(const Json& j, FieldPtr* F_out);

// Rationals "p/q" (exact); also accepts "q^-k" in parse.
std::string mpq_to_string(const mpq_class& v);
mpq_class parse_rational(const std::string& s, unsigned q_for_powers);

// eps grids like "2^-1..2^-10".
std::vector<mpq_class> parse_eps_grid(const std::string& s);

}  // namespace ffdioph
