#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "collagekit/collage.hpp"
#include "collagekit/enriched.hpp"
#include "collagekit/modcat.hpp"

// JSON documents.  Every document carries "schema" and "version" at top level
// next to its payload.  Keys are sorted (nlohmann's default object map), so a
// value has exactly one serialization.
namespace ck {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

Json encode_base(const Base& B);
BasePtr decode_base(const Json& j);

// Objects are integer set sizes, or extent categories over a Mod base.
Json encode_obj(const Base& B, const Obj& a);
Obj decode_obj(const BasePtr& B, const Json& j);
Json encode_hom1(const Base& B, const Hom1& f);
Hom1 decode_hom1(const BasePtr& B, const Json& j, const Obj& src, const Obj& dst);
Json encode_hom2(const Base& B, const Hom2& a);
Hom2 decode_hom2(const BasePtr& B, const Json& j, const Hom1& s, const Hom1& t);

// Standalone payloads embed their base; modules and functors embed both
// categories.
Json encode_ecategory(const ECategory& A);
ECatPtr decode_ecategory(const Json& j);
Json encode_emodule(const EModule& T);
EModule decode_emodule(const Json& j);
// Modules T1, T2, ... with T(i+1) starting where Ti ends.  Equal category
// encodings decode to one shared category.
std::vector<EModule> decode_module_chain(const std::vector<Json>& docs);
Json encode_efunctor(const EFunctor& D);
EFunctor decode_efunctor(const Json& j);
// Categories over Mod(C).  Same layout as an ecategory; the base is a Mod base.
Json encode_mod_category(const ECategory& BB);
ECatPtr decode_mod_category(const Json& j);

// Structural equality that looks through decoded copies of extents and
// categories.
bool same_value(const ECategory& A, const ECategory& C);
bool same_value(const EModule& T, const EModule& S);

Json make_document(const std::string& schema, Json payload);
// Parses and checks schema and version; throws StructuralError.
Json read_document(const std::string& path);
Json parse_document(const std::string& text);
const std::string& schema_of(const Json& doc);
std::string canonical_dump(const Json& j);

Json report_json(const Report& r);

}  // namespace ck
