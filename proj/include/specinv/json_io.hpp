#pragma once

#include <json.hpp>

#include <string>

#include "specinv/fgl.hpp"
#include "specinv/support.hpp"
#include "specinv/witness.hpp"

namespace specinv::io {

/// Insertion-ordered JSON so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

// Extended heights: JSON integer or "inf"; type values additionally allow
// "trivial". HT_OMEGA is internal and never serialized.
Json ht_to_json(Ht a);
Ht ht_from_json(const Json& j);
Json ty_to_json(Ht a);
Ht ty_from_json(const Json& j);

// Arbitrary-precision integers travel as decimal strings; matrices row-major.
Json int_to_json(const Int& n);
Int int_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json group_to_json(const FgAbGroup& A);
FgAbGroup group_from_json(const Json& j);

Json subgroup_to_json(const Subgroup& B);
Subgroup subgroup_from_json(const Json& j);

Json hom_to_json(const Homomorphism& g);
Homomorphism hom_from_json(const Json& j);

// Subgroup references: lattice index for finite contexts, "T" / "C<m>" for
// the circle.
Json subref_to_json(const SubRef& s);
SubRef subref_from_json(const SpecContext& ctx, const Json& j);

Json point_to_json(const PrimePoint& P);
PrimePoint point_from_json(const SpecContext& ctx, const Json& j);

// Admissible functions: {"values": {"<id>": v}} for finite contexts,
// {"T": v, "generic": v, "exceptions": {"<m>": v}} for the circle.
Json admfn_to_json(const SpecContext& ctx, const AdmissibleFn& f);
AdmissibleFn admfn_from_json(const SpecContext& ctx, const Json& j);

// Type functions mirror admissible functions with "trivial" allowed.
Json tyfn_to_json(const SpecContext& ctx, const TypeFunction& t);
TypeFunction tyfn_from_json(const SpecContext& ctx, const Json& j);

Json ring_to_json(const VRing& r);
VRing ring_from_json(const Json& j);

// Ring elements as strings in the printed format ("2*v1^3*v2^-1 - 1/2").
std::string vpoly_to_string(const VPoly& a);
VPoly vpoly_from_string(const VRing& r, const std::string& s);

// Series carry their ring: {"ring": ..., "trunc": D,
// "terms": [{"exp": [i] or [i,j], "coeff": "..."}]}.
Json series1_to_json(const VRing& r, const Series1<VPoly>& s);
Series1<VPoly> series1_from_json(const Json& j);
Json series2_to_json(const VRing& r, const Series2<VPoly>& s);
Series2<VPoly> series2_from_json(const Json& j);

// Witness-expression AST: primitives {"prim": ...}, composites {"op": ...}.
Json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const Json& j);

// Interval-height tables (output only; heights are computed, not parsed).
Json heightfn_to_json(const SpecContext& ctx, const HeightFn& h);

/// Group descriptor "r;d1,d2,..." (rank; invariant factors, smallest first).
FgAbGroup parse_group_descriptor(const std::string& s);
std::string group_descriptor(const FgAbGroup& A);

/// Subgroup reference in CLI position: "T" / "C<m>" on the circle; on finite
/// lattices either "#<id>", a bare index, or the structure name ("1", "C4",
/// "C2xC2") when it identifies a unique subgroup.
SubRef resolve_subref(const SpecContext& ctx, const std::string& s);

/// "subref:n" with n a height or "inf".
PrimePoint parse_point(const SpecContext& ctx, const std::string& s);

}  // namespace specinv::io
