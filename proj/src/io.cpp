#include "collagekit/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

namespace ck {

namespace {

const std::set<std::string> kSchemas = {"base", "ecategory", "efunctor", "emodule", "mod-enriched-category", "job"};

[[noreturn]] void bad(const std::string& what) { throw StructuralError("document: " + what); }

const Json& field(const Json& j, const std::string& key) {
    if (!j.is_object()) bad("expected an object holding \"" + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) bad("missing \"" + key + "\"");
    return *it;
}

int as_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) bad(what + " must be an integer");
    return j.get<int>();
}

std::vector<int> as_ints(const Json& j, const std::string& what) {
    if (!j.is_array()) bad(what + " must be an array");
    std::vector<int> out;
    for (const auto& v : j) out.push_back(as_int(v, what));
    return out;
}

std::string as_str(const Json& j, const std::string& what) {
    if (!j.is_string()) bad(what + " must be a string");
    return j.get<std::string>();
}

const Json& at2(const Json& j, const std::string& a, const std::string& b) { return field(field(j, a), b); }

std::string arity_name(ArityClass a) { return a == ArityClass::SINGLETON ? "singleton" : "finite"; }

ArityClass parse_arity(const Json& j) {
    std::string s = as_str(j, "arity");
    if (s == "singleton") return ArityClass::SINGLETON;
    if (s == "finite") return ArityClass::FINITE;
    bad("unknown arity " + s);
}

std::string rule_name(TightRule r) {
    switch (r) {
    case TightRule::STANDARD: return "standard";
    case TightRule::ALL: return "all";
    case TightRule::IDENTITY: return "identity";
    }
    return "standard";
}

TightRule parse_rule(const Json& j) {
    std::string s = as_str(j, "tight");
    if (s == "standard") return TightRule::STANDARD;
    if (s == "all") return TightRule::ALL;
    if (s == "identity") return TightRule::IDENTITY;
    bad("unknown tight rule " + s);
}

Json square(const std::vector<int>& t, int n) {
    Json out = Json::array();
    for (int a = 0; a < n; ++a) {
        Json row = Json::array();
        for (int b = 0; b < n; ++b) row.push_back(t[a * n + b]);
        out.push_back(row);
    }
    return out;
}

std::vector<int> unsquare(const Json& j, int n, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) bad(what + " must have one row per element");
    std::vector<int> out;
    for (const auto& row : j) {
        auto r = as_ints(row, what);
        if (static_cast<int>(r.size()) != n) bad(what + " rows must have one entry per element");
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::vector<std::string> object_names(const Json& objects) {
    if (!objects.is_array()) bad("\"objects\" must be an array");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& o : objects) {
        std::string n = as_str(field(o, "name"), "object name");
        if (!seen.insert(n).second) bad("duplicate object name " + n);
        names.push_back(n);
    }
    return names;
}

// Category body without its base.
Json ecat_body(const ECategory& A) {
    const Base& B = *A.base;
    const int n = A.size();
    Json objects = Json::array(), homs = Json::object(), comp = Json::object(), unit = Json::object();
    for (int x = 0; x < n; ++x) objects.push_back({{"name", A.names[x]}, {"extent", encode_obj(B, A.ext[x])}});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            homs[A.names[x]][A.names[y]] = encode_hom1(B, A.hom(x, y));
            for (int z = 0; z < n; ++z) comp[A.names[x]][A.names[y]][A.names[z]] = encode_hom2(B, A.m(x, y, z));
        }
    for (int x = 0; x < n; ++x) unit[A.names[x]] = encode_hom2(B, A.j(x));
    return {{"objects", objects}, {"homs", homs}, {"composition", comp}, {"units", unit}};
}

ECatPtr ecat_from_body(const BasePtr& B, const Json& j) {
    auto out = std::make_shared<ECategory>();
    out->base = B;
    const Json& objects = field(j, "objects");
    out->names = object_names(objects);
    const int n = out->size();
    for (const auto& o : objects) out->ext.push_back(decode_obj(B, field(o, "extent")));
    const Json& homs = field(j, "homs");
    const Json& comp = field(j, "composition");
    const Json& unit = field(j, "units");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            out->homs.push_back(decode_hom1(B, at2(homs, out->names[x], out->names[y]), out->ext[y], out->ext[x]));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                Hom1 s = B->compose1(out->hom(x, y), out->hom(y, z));
                const Json& c = field(at2(comp, out->names[x], out->names[y]), out->names[z]);
                out->comps.push_back(decode_hom2(B, c, s, out->hom(x, z)));
            }
    for (int x = 0; x < n; ++x)
        out->units.push_back(decode_hom2(B, field(unit, out->names[x]), B->id1(out->ext[x]), out->hom(x, x)));
    return out;
}

// Module body without its categories.
Json module_body(const EModule& T) {
    const Base& B = *T.src->base;
    const ECategory& A = *T.src;
    const ECategory& Z = *T.dst;
    Json comps = Json::object(), ract = Json::object(), lact = Json::object();
    for (int u = 0; u < T.nb(); ++u)
        for (int x = 0; x < T.na(); ++x) comps[Z.names[u]][A.names[x]] = encode_hom1(B, T.at(u, x));
    for (int x = 0; x < T.na(); ++x)
        for (int y = 0; y < T.na(); ++y)
            for (int u = 0; u < T.nb(); ++u) ract[A.names[x]][A.names[y]][Z.names[u]] = encode_hom2(B, T.ract(x, y, u));
    for (int x = 0; x < T.na(); ++x)
        for (int u = 0; u < T.nb(); ++u)
            for (int v = 0; v < T.nb(); ++v) lact[A.names[x]][Z.names[u]][Z.names[v]] = encode_hom2(B, T.lact(x, u, v));
    return {{"components", comps}, {"right_action", ract}, {"left_action", lact}};
}

EModule module_from_body(const ECatPtr& A, const ECatPtr& Z, const Json& j) {
    const BasePtr& B = A->base;
    EModule T = EModule::shape(A, Z);
    const int na = A->size(), nb = Z->size();
    const Json& comps = field(j, "components");
    const Json& ract = field(j, "right_action");
    const Json& lact = field(j, "left_action");
    for (int u = 0; u < nb; ++u)
        for (int x = 0; x < na; ++x)
            T.comps[u * na + x] = decode_hom1(B, at2(comps, Z->names[u], A->names[x]), A->ext[x], Z->ext[u]);
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int u = 0; u < nb; ++u) {
                Hom1 s = B->compose1(T.at(u, x), A->hom(x, y));
                T.racts[(x * na + y) * nb + u] =
                    decode_hom2(B, field(at2(ract, A->names[x], A->names[y]), Z->names[u]), s, T.at(u, y));
            }
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nb; ++u)
            for (int v = 0; v < nb; ++v) {
                Hom1 s = B->compose1(Z->hom(u, v), T.at(v, x));
                T.lacts[(x * nb + u) * nb + v] =
                    decode_hom2(B, field(at2(lact, A->names[x], Z->names[u]), Z->names[v]), s, T.at(u, x));
            }
    return T;
}

Json modcell_body(const ModCell& c) {
    const Base& B = *c.src.src->base;
    const ECategory& A = *c.src.src;
    const ECategory& Z = *c.src.dst;
    Json comps = Json::object();
    for (int u = 0; u < Z.size(); ++u)
        for (int x = 0; x < A.size(); ++x) comps[Z.names[u]][A.names[x]] = encode_hom2(B, c.at(u, x));
    return {{"components", comps}};
}

ModCell modcell_from_body(const EModule& s, const EModule& t, const Json& j) {
    const BasePtr& B = s.src->base;
    const ECategory& A = *s.src;
    const ECategory& Z = *s.dst;
    ModCell c;
    c.src = s;
    c.dst = t;
    const Json& comps = field(j, "components");
    for (int u = 0; u < Z.size(); ++u)
        for (int x = 0; x < A.size(); ++x)
            c.comps.push_back(decode_hom2(B, at2(comps, Z.names[u], A.names[x]), s.at(u, x), t.at(u, x)));
    return c;
}

// Reuses one decoded base when both sides carry the same encoding.
std::pair<ECatPtr, ECatPtr> decode_pair(const Json& src, const Json& dst) {
    ECatPtr A = decode_ecategory(src);
    if (src == dst) return {A, A};
    if (field(src, "base") != field(dst, "base")) bad("both categories must live over the same base");
    return {A, ecat_from_body(A->base, dst)};
}

}  // namespace

Json encode_base(const Base& B) {
    if (auto s = dynamic_cast<const SpanBase*>(&B))
        return {{"kind", "span"}, {"arity", arity_name(B.arity())}, {"tight", rule_name(s->rule())}};
    if (auto q = dynamic_cast<const QuantaloidBase*>(&B)) {
        if (q->has_custom_tight()) bad("custom tightness predicates cannot be serialized");
        const Quantale& Q = q->quantale();
        Json qj = {{"label", Q.label()},
                   {"elements", Q.names()},
                   {"join", square(Q.join_table(), Q.size())},
                   {"tensor", square(Q.tensor_table(), Q.size())},
                   {"unit", Q.unit()}};
        return {{"kind", "quantaloid"}, {"arity", arity_name(B.arity())}, {"tight", rule_name(q->rule())}, {"quantale", qj}};
    }
    if (auto m = dynamic_cast<const ModBase*>(&B))
        return {{"kind", "mod"}, {"arity", arity_name(B.arity())}, {"inner", encode_base(*m->inner())}};
    bad("base " + B.name() + " has no serialization");
}

BasePtr decode_base(const Json& j) {
    std::string kind = as_str(field(j, "kind"), "base kind");
    ArityClass a = parse_arity(field(j, "arity"));
    if (kind == "span") return std::make_shared<SpanBase>(a, parse_rule(field(j, "tight")));
    if (kind == "quantaloid") {
        const Json& q = field(j, "quantale");
        std::vector<std::string> names;
        for (const auto& e : field(q, "elements")) names.push_back(as_str(e, "element name"));
        const int n = static_cast<int>(names.size());
        Quantale Q(as_str(field(q, "label"), "quantale label"), names, unsquare(field(q, "join"), n, "join table"),
                   unsquare(field(q, "tensor"), n, "tensor table"), as_int(field(q, "unit"), "unit"));
        return std::make_shared<QuantaloidBase>(Q, a, parse_rule(field(j, "tight")));
    }
    if (kind == "mod") return std::make_shared<ModBase>(decode_base(field(j, "inner")), a);
    bad("unknown base kind " + kind);
}

Json encode_obj(const Base& B, const Obj& a) {
    if (dynamic_cast<const ModBase*>(&B)) return ecat_body(*ModBase::cat(a));
    return set_size(a);
}

Obj decode_obj(const BasePtr& B, const Json& j) {
    if (auto m = dynamic_cast<const ModBase*>(B.get())) return m->obj(ecat_from_body(m->inner(), j));
    int n = as_int(j, "extent");
    if (n < 0) bad("extent must be non-negative");
    return set_obj(n);
}

Json encode_hom1(const Base& B, const Hom1& f) {
    if (dynamic_cast<const SpanBase*>(&B)) {
        const auto& s = SpanBase::data(f);
        return {{"apex", s.apex}, {"left", s.left}, {"right", s.right}};
    }
    if (dynamic_cast<const QuantaloidBase*>(&B)) {
        const auto& m = QuantaloidBase::data(f);
        Json rows = Json::array();
        for (int i = 0; i < m.rows; ++i) {
            Json row = Json::array();
            for (int k = 0; k < m.cols; ++k) row.push_back(m.at(i, k));
            rows.push_back(row);
        }
        return {{"matrix", rows}};
    }
    if (dynamic_cast<const ModBase*>(&B)) return module_body(ModBase::mod(f));
    bad("base " + B.name() + " has no serialization");
}

Hom1 decode_hom1(const BasePtr& B, const Json& j, const Obj& src, const Obj& dst) {
    if (dynamic_cast<const SpanBase*>(B.get())) {
        auto left = as_ints(field(j, "left"), "left leg"), right = as_ints(field(j, "right"), "right leg");
        if (as_int(field(j, "apex"), "apex") != static_cast<int>(left.size())) bad("apex does not match the legs");
        Hom1 f = SpanBase::make(set_size(src), set_size(dst), left, right);
        B->check1(f);
        return f;
    }
    if (auto q = dynamic_cast<const QuantaloidBase*>(B.get())) {
        const Json& rows = field(j, "matrix");
        const int r = set_size(dst), c = set_size(src);
        if (!rows.is_array() || static_cast<int>(rows.size()) != r) bad("matrix needs one row per target element");
        std::vector<int> e;
        for (const auto& row : rows) {
            auto v = as_ints(row, "matrix row");
            if (static_cast<int>(v.size()) != c) bad("matrix rows need one entry per source element");
            for (int x : v)
                if (x < 0 || x >= q->quantale().size()) bad("matrix entry outside the quantale");
            e.insert(e.end(), v.begin(), v.end());
        }
        return q->make(c, r, e);
    }
    if (auto m = dynamic_cast<const ModBase*>(B.get()))
        return m->wrap(module_from_body(ModBase::cat(src), ModBase::cat(dst), j));
    bad("base " + B->name() + " has no serialization");
}

Json encode_hom2(const Base& B, const Hom2& a) {
    if (dynamic_cast<const SpanBase*>(&B)) return SpanBase::fn(a);
    if (dynamic_cast<const QuantaloidBase*>(&B)) return true;
    if (dynamic_cast<const ModBase*>(&B)) return modcell_body(ModBase::cell(a));
    bad("base " + B.name() + " has no serialization");
}

Hom2 decode_hom2(const BasePtr& B, const Json& j, const Hom1& s, const Hom1& t) {
    if (dynamic_cast<const SpanBase*>(B.get())) return SpanBase::map(s, t, as_ints(j, "2-cell"));
    if (auto q = dynamic_cast<const QuantaloidBase*>(B.get())) {
        if (j != true) bad("quantaloid 2-cells are written as true");
        return q->token(s, t);
    }
    if (auto m = dynamic_cast<const ModBase*>(B.get()))
        return m->wrap(modcell_from_body(ModBase::mod(s), ModBase::mod(t), j));
    bad("base " + B->name() + " has no serialization");
}

Json encode_ecategory(const ECategory& A) {
    Json j = ecat_body(A);
    j["base"] = encode_base(*A.base);
    return j;
}

ECatPtr decode_ecategory(const Json& j) { return ecat_from_body(decode_base(field(j, "base")), j); }

Json encode_emodule(const EModule& T) {
    Json j = module_body(T);
    j["src"] = encode_ecategory(*T.src);
    j["dst"] = encode_ecategory(*T.dst);
    return j;
}

EModule decode_emodule(const Json& j) {
    auto [A, Z] = decode_pair(field(j, "src"), field(j, "dst"));
    return module_from_body(A, Z, j);
}

std::vector<EModule> decode_module_chain(const std::vector<Json>& docs) {
    std::vector<EModule> out;
    if (docs.empty()) return out;
    const Json& base = field(field(docs[0], "src"), "base");
    BasePtr B = decode_base(base);
    std::map<std::string, ECatPtr> seen;
    auto cat = [&](const Json& j) {
        if (field(j, "base") != base) bad("all modules must live over the same base");
        auto key = j.dump();
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        return seen[key] = ecat_from_body(B, j);
    };
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const Json& src = field(docs[i], "src");
        if (i > 0 && src != field(docs[i - 1], "dst"))
            bad("module " + std::to_string(i + 1) + " does not start where module " + std::to_string(i) + " ends");
        out.push_back(module_from_body(cat(src), cat(field(docs[i], "dst")), docs[i]));
    }
    return out;
}

Json encode_efunctor(const EFunctor& D) {
    const Base& B = *D.src->base;
    const ECategory& A = *D.src;
    const ECategory& Z = *D.dst;
    Json objects = Json::object(), cells = Json::object(), squares = Json::object();
    for (int x = 0; x < A.size(); ++x) {
        objects[A.names[x]] = Z.names[D.obj[x]];
        cells[A.names[x]] = encode_hom1(B, D.cell(x));
        for (int y = 0; y < A.size(); ++y) squares[A.names[x]][A.names[y]] = encode_hom2(B, D.square(x, y));
    }
    return {{"src", encode_ecategory(A)}, {"dst", encode_ecategory(Z)}, {"objects", objects}, {"cells", cells},
            {"squares", squares}};
}

EFunctor decode_efunctor(const Json& j) {
    auto [A, Z] = decode_pair(field(j, "src"), field(j, "dst"));
    const BasePtr& B = A->base;
    EFunctor D;
    D.src = A;
    D.dst = Z;
    const int n = A->size();
    for (int x = 0; x < n; ++x) {
        std::string target = as_str(field(field(j, "objects"), A->names[x]), "object image");
        int y = Z->index(target);
        if (y < 0) bad("unknown object " + target);
        D.obj.push_back(y);
        D.cells.push_back(decode_hom1(B, field(field(j, "cells"), A->names[x]), A->ext[x], Z->ext[y]));
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Hom1 s = B->compose1(D.cell(x), A->hom(x, y));
            Hom1 t = B->compose1(Z->hom(D.obj[x], D.obj[y]), D.cell(y));
            D.sq.push_back(decode_hom2(B, at2(field(j, "squares"), A->names[x], A->names[y]), s, t));
        }
    return D;
}

Json encode_mod_category(const ECategory& BB) {
    mod_base_of(BB);
    return encode_ecategory(BB);
}

ECatPtr decode_mod_category(const Json& j) {
    BasePtr B = decode_base(field(j, "base"));
    if (!dynamic_cast<const ModBase*>(B.get())) bad("a mod-enriched category needs a base of kind mod");
    return ecat_from_body(B, j);
}

namespace {

bool same1(const Base& B, const Hom1& f, const Hom1& g);

bool same2(const Base& B, const Hom2& a, const Hom2& c) {
    const auto* M = dynamic_cast<const ModBase*>(&B);
    if (!M) return B.eq2(a, c);
    const ModCell &f = ModBase::cell(a), &g = ModBase::cell(c);
    if (f.comps.size() != g.comps.size()) return false;
    for (std::size_t i = 0; i < f.comps.size(); ++i)
        if (!same2(*M->inner(), f.comps[i], g.comps[i])) return false;
    return true;
}

bool same1(const Base& B, const Hom1& f, const Hom1& g) {
    if (!dynamic_cast<const ModBase*>(&B)) return B.eq1(f, g);
    return same_value(ModBase::mod(f), ModBase::mod(g));
}

bool same_obj(const Base& B, const Obj& a, const Obj& b) {
    if (!dynamic_cast<const ModBase*>(&B)) return a == b;
    return same_value(*ModBase::cat(a), *ModBase::cat(b));
}

}  // namespace

bool same_value(const ECategory& A, const ECategory& C) {
    if (encode_base(*A.base) != encode_base(*C.base)) return false;
    if (A.size() != C.size() || A.names != C.names) return false;
    const Base& B = *A.base;
    for (int x = 0; x < A.size(); ++x) {
        if (!same_obj(B, A.ext[x], C.ext[x]) || !same2(B, A.j(x), C.j(x))) return false;
        for (int y = 0; y < A.size(); ++y) {
            if (!same1(B, A.hom(x, y), C.hom(x, y))) return false;
            for (int z = 0; z < A.size(); ++z)
                if (!same2(B, A.m(x, y, z), C.m(x, y, z))) return false;
        }
    }
    return true;
}

bool same_value(const EModule& T, const EModule& S) {
    if (!same_value(*T.src, *S.src) || !same_value(*T.dst, *S.dst)) return false;
    const Base& B = *T.src->base;
    for (std::size_t i = 0; i < T.comps.size(); ++i)
        if (!same1(B, T.comps[i], S.comps[i])) return false;
    for (std::size_t i = 0; i < T.racts.size(); ++i)
        if (!same2(B, T.racts[i], S.racts[i])) return false;
    for (std::size_t i = 0; i < T.lacts.size(); ++i)
        if (!same2(B, T.lacts[i], S.lacts[i])) return false;
    return true;
}

Json make_document(const std::string& schema, Json payload) {
    if (!kSchemas.count(schema)) bad("unknown schema " + schema);
    payload["schema"] = schema;
    payload["version"] = kFormatVersion;
    return payload;
}

Json parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(std::string("not JSON: ") + e.what());
    }
    std::string schema = as_str(field(j, "schema"), "schema");
    if (!kSchemas.count(schema)) bad("unknown schema " + schema);
    if (as_int(field(j, "version"), "version") != kFormatVersion)
        bad("unsupported version " + field(j, "version").dump());
    return j;
}

Json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

const std::string& schema_of(const Json& doc) { return field(doc, "schema").get_ref<const std::string&>(); }

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json report_json(const Report& r) {
    Json stages = Json::array();
    for (const auto& s : r.stages) stages.push_back({{"name", s.name}, {"verdict", to_string(s.verdict)}, {"detail", s.detail}});
    return {{"verdict", to_string(r.verdict())}, {"stages", stages}};
}

}  // namespace ck
