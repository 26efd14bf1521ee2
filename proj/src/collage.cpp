#include "collagekit/collage.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "collagekit/bridge.hpp"
#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

namespace ck {

namespace {

Hom2 cell2(const Hom1& s, const Hom1& t, ModCell c) {
    auto d = std::make_shared<CellD>();
    d->cell = std::move(c);
    return Hom2{s, t, d};
}

ModCell blank_cell(const EModule& s, const EModule& t) {
    ModCell c;
    c.src = s;
    c.dst = t;
    c.comps.resize(s.comps.size());
    return c;
}

Hom2 must(std::optional<Hom2> h, const std::string& what) {
    if (!h) throw InternalError("no factorization: " + what);
    return *h;
}

// Module cell out of a composite, induced componentwise from maps on the
// cocone legs: map(u, w, x) : T(u,x).S(x,w) => dst(u,w).
ModCell induced(const ModComposite& W, const EModule& dst, const std::function<Hom2(int, int, int)>& map,
                const std::string& what) {
    const Base& C = *dst.src->base;
    ModCell c = blank_cell(W.composite, dst);
    const int na = W.composite.na(), nb = W.composite.nb(), nm = W.T.na();
    for (int u = 0; u < nb; ++u)
        for (int w = 0; w < na; ++w) {
            std::vector<Hom2> maps;
            for (int x = 0; x < nm; ++x) maps.push_back(map(u, w, x));
            c.comps[u * na + w] = must(C.factor(W.composite.at(u, w), dst.at(u, w), W.family(u, w), maps), what);
        }
    return c;
}

std::vector<int> normalize_groups(std::vector<int> g) {
    std::map<int, int> relabel;
    for (int& v : g) {
        auto it = relabel.find(v);
        if (it == relabel.end()) it = relabel.emplace(v, static_cast<int>(relabel.size())).first;
        v = it->second;
    }
    return g;
}

ECatPtr full_subcategory(const ECategory& A, const std::vector<int>& mem) {
    const int k = static_cast<int>(mem.size()), n = A.size();
    auto E = std::make_shared<ECategory>();
    E->base = A.base;
    for (int a : mem) {
        E->names.push_back(A.names[a]);
        E->ext.push_back(A.ext[a]);
        E->units.push_back(A.j(a));
    }
    for (int a : mem)
        for (int b : mem) E->homs.push_back(A.hom(a, b));
    for (int a : mem)
        for (int b : mem)
            for (int c : mem) E->comps.push_back(A.comps[(a * n + b) * n + c]);
    (void)k;
    return E;
}

// The (z, z') component of the unit of block x, E_x(z,z') => hom(x,x)(z,z').
const Hom2& kappa(const ECategory& input, int x, int z, int z2) {
    return ModBase::cell(input.j(x)).at(z, z2);
}

}  // namespace

const ModBase& mod_base_of(const ECategory& BB) {
    auto p = dynamic_cast<const ModBase*>(BB.base.get());
    if (!p) throw StructuralError("expected a category enriched in modules, got one over " + BB.base->name());
    return *p;
}

ECatPtr blocked(const ECatPtr& A, const std::vector<int>& group, bool discrete_extents, const ModBasePtr& M) {
    const Base& C = *A->base;
    const int n = A->size();
    if (static_cast<int>(group.size()) != n) throw StructuralError("blocked: one group per object is required");
    int k = 0;
    for (int g : group) {
        if (g < 0) throw StructuralError("blocked: negative group");
        k = std::max(k, g + 1);
    }
    std::vector<std::vector<int>> mem(k);
    for (int a = 0; a < n; ++a) mem[group[a]].push_back(a);
    for (const auto& m : mem)
        if (m.empty()) throw StructuralError("blocked: every group must be used");
    if (M->arity() == ArityClass::SINGLETON && k != 1) throw StructuralError("arity {1} allows exactly one object");

    std::vector<ECatPtr> E(k);
    for (int x = 0; x < k; ++x) {
        if (discrete_extents) {
            std::vector<Obj> ext;
            std::vector<std::string> names;
            for (int a : mem[x]) {
                ext.push_back(A->ext[a]);
                names.push_back(A->names[a]);
            }
            E[x] = discrete_cat(A->base, ext, names);
        } else {
            E[x] = full_subcategory(*A, mem[x]);
        }
    }
    auto kap = [&](int x, int z, int z2) -> Hom2 {
        int a = mem[x][z], b = mem[x][z2];
        if (!discrete_extents) return C.id2(A->hom(a, b));
        if (z == z2) return A->j(a);
        return C.from_initial(E[x]->hom(z, z2), A->hom(a, b));
    };

    auto out = std::make_shared<ECategory>();
    out->base = M;
    for (int x = 0; x < k; ++x) {
        out->names.push_back("b" + std::to_string(x));
        out->ext.push_back(M->obj(E[x]));
    }
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
            const int na = static_cast<int>(mem[y].size()), nb = static_cast<int>(mem[x].size());
            EModule T = EModule::shape(E[y], E[x]);
            for (int z = 0; z < nb; ++z)
                for (int w = 0; w < na; ++w) T.comps[z * na + w] = A->hom(mem[x][z], mem[y][w]);
            for (int w = 0; w < na; ++w)
                for (int w2 = 0; w2 < na; ++w2)
                    for (int z = 0; z < nb; ++z) {
                        int az = mem[x][z], aw = mem[y][w], aw2 = mem[y][w2];
                        T.racts[(w * na + w2) * nb + z] =
                            C.vcomp(A->m(az, aw, aw2), C.whisker_left(A->hom(az, aw), kap(y, w, w2)));
                    }
            for (int w = 0; w < na; ++w)
                for (int z = 0; z < nb; ++z)
                    for (int z2 = 0; z2 < nb; ++z2) {
                        int az = mem[x][z], az2 = mem[x][z2], aw = mem[y][w];
                        T.lacts[(w * nb + z) * nb + z2] =
                            C.vcomp(A->m(az, az2, aw), C.whisker_right(kap(x, z, z2), A->hom(az2, aw)));
                    }
            out->homs.push_back(M->wrap(T));
        }
    out->comps.resize(k * k * k);
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (int t = 0; t < k; ++t) {
                Hom1 s = M->compose1(out->hom(x, y), out->hom(y, t));
                auto W = M->witness(out->hom(x, y), out->hom(y, t));
                ModCell c = induced(
                    *W, ModBase::mod(out->hom(x, t)),
                    [&](int z, int v, int w) { return A->m(mem[x][z], mem[y][w], mem[t][v]); }, "blocked composition");
                out->comps[(x * k + y) * k + t] = cell2(s, out->hom(x, t), std::move(c));
            }
    for (int x = 0; x < k; ++x) {
        Hom1 id = M->id1(out->ext[x]);
        ModCell c = blank_cell(ModBase::mod(id), ModBase::mod(out->hom(x, x)));
        const int m = static_cast<int>(mem[x].size());
        for (int z = 0; z < m; ++z)
            for (int z2 = 0; z2 < m; ++z2) c.comps[z * m + z2] = kap(x, z, z2);
        out->units.push_back(cell2(id, out->hom(x, x), std::move(c)));
    }
    return out;
}

ECatPtr cograph(const ModBasePtr& M, const ECatPtr& E0, const ECatPtr& E1, const EModule& P) {
    if (P.src != E1 || P.dst != E0) throw StructuralError("cograph: the module must run from E1 to E0");
    auto out = std::make_shared<ECategory>();
    out->base = M;
    out->names = {"b0", "b1"};
    out->ext = {M->obj(E0), M->obj(E1)};
    out->homs = {M->id1(out->ext[0]), M->wrap(P), M->initial(out->ext[0], out->ext[1]), M->id1(out->ext[1])};
    out->comps.resize(8);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                Hom2 c;
                if (x == y && y == z)
                    c = M->lunit(out->hom(x, x));
                else if (x == y)
                    c = M->lunit(out->hom(y, z));
                else if (y == z)
                    c = M->runit(out->hom(x, y));
                else
                    c = M->from_initial(M->compose1(out->hom(x, y), out->hom(y, z)), out->hom(x, z));
                out->comps[(x * 2 + y) * 2 + z] = c;
            }
    out->units = {M->id2(out->hom(0, 0)), M->id2(out->hom(1, 1))};
    return out;
}

ECatPtr ecat_coproduct(const std::vector<ECatPtr>& parts) {
    if (parts.empty()) throw StructuralError("ecat_coproduct needs at least one part");
    const Base& C = *parts[0]->base;
    auto out = std::make_shared<ECategory>();
    out->base = parts[0]->base;
    std::vector<std::pair<int, int>> where;
    for (int p = 0; p < static_cast<int>(parts.size()); ++p)
        for (int z = 0; z < parts[p]->size(); ++z) {
            where.emplace_back(p, z);
            out->names.push_back("p" + std::to_string(p) + "." + parts[p]->names[z]);
            out->ext.push_back(parts[p]->ext[z]);
            out->units.push_back(parts[p]->j(z));
        }
    const int n = static_cast<int>(where.size());
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            auto [p, z] = where[s];
            auto [q, w] = where[t];
            out->homs.push_back(p == q ? parts[p]->hom(z, w) : C.initial(out->ext[t], out->ext[s]));
        }
    out->comps.resize(n * n * n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) {
                auto [p, z] = where[s];
                auto [q, w] = where[t];
                auto [r, v] = where[u];
                out->comps[(s * n + t) * n + u] =
                    (p == q && q == r) ? parts[p]->m(z, w, v)
                                       : C.from_initial(C.compose1(out->hom(s, t), out->hom(t, u)), out->hom(s, u));
            }
    return out;
}

bool same_ecat_unnamed(const ECategory& A, const ECategory& B) {
    if (A.size() != B.size()) return false;
    ECategory b = B;
    b.names = A.names;
    return same_ecat(A, b);
}

ECatPtr flatten(const ECatPtr& input) {
    const ModBase& M = mod_base_of(*input);
    const Base& C = *M.inner();
    const int n = input->size();
    std::vector<std::pair<int, int>> origin;
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < ModBase::cat(input->ext[x])->size(); ++z) origin.emplace_back(x, z);
    const int N = static_cast<int>(origin.size());
    if (M.inner()->arity() == ArityClass::SINGLETON && N != 1)
        throw StructuralError("collage over a base of arity {1} must have a single object");
    auto out = std::make_shared<ECategory>();
    out->base = M.inner();
    for (auto [x, z] : origin) {
        const ECategory& E = *ModBase::cat(input->ext[x]);
        out->names.push_back(input->names[x] + "." + E.names[z]);
        out->ext.push_back(E.ext[z]);
        out->units.push_back(C.vcomp(kappa(*input, x, z, z), E.j(z)));
    }
    for (auto [x, z] : origin)
        for (auto [y, w] : origin) out->homs.push_back(ModBase::mod(input->hom(x, y)).at(z, w));
    out->comps.resize(N * N * N);
    for (int s = 0; s < N; ++s)
        for (int t = 0; t < N; ++t)
            for (int u = 0; u < N; ++u) {
                auto [x, z] = origin[s];
                auto [y, w] = origin[t];
                auto [q, v] = origin[u];
                auto W = M.witness(input->hom(x, y), input->hom(y, q));
                const ModCell& m = ModBase::cell(input->m(x, y, q));
                out->comps[(s * N + t) * N + u] = C.vcomp(m.at(z, v), W->cocone(z, v, w));
            }
    return out;
}

CollageResult collage_over(const ECatPtr& input, const ECatPtr& total) {
    const ModBase& M = mod_base_of(*input);
    const Base& C = *M.inner();
    CollageResult r;
    r.input = input;
    r.total = total;
    const int n = input->size();
    for (int x = 0; x < n; ++x) {
        r.offset.push_back(static_cast<int>(r.origin.size()));
        for (int z = 0; z < ModBase::cat(input->ext[x])->size(); ++z) r.origin.emplace_back(x, z);
    }
    if (static_cast<int>(r.origin.size()) != total->size())
        throw StructuralError("total category has the wrong number of objects for this input");
    for (int x = 0; x < n; ++x) {
        const ECatPtr& E = ModBase::cat(input->ext[x]);
        const int m = E->size();
        EFunctor K;
        K.src = E;
        K.dst = total;
        for (int z = 0; z < m; ++z) {
            K.obj.push_back(r.inject(x, z));
            K.cells.push_back(C.id1(E->ext[z]));
        }
        for (int z = 0; z < m; ++z)
            for (int w = 0; w < m; ++w) {
                const Hom1& h = total->hom(r.inject(x, z), r.inject(x, w));
                K.sq.push_back(C.vcomp(C.runit_inv(h), C.vcomp(kappa(*input, x, z, w), C.lunit(E->hom(z, w)))));
            }
        Coprojection p;
        p.functor = K;
        try {
            p.module = representable(K);
        } catch (const InternalError&) {
        } catch (const StructuralError&) {
        }
        r.coprojections.push_back(std::move(p));
    }
    try {
        r.vertex = hat_cat(input->base, M.obj(total));
    } catch (const InternalError&) {
    }
    return r;
}

CollageResult collage(const ECatPtr& input) {
    CollageResult r = collage_over(input, flatten(input));
    auto [U, V] = assemble_universal(r);
    r.universal = U;
    r.reverse = V;
    return r;
}

EModule column_module(const CollageResult& r, int x) {
    const ECategory& T = *r.total;
    const Base& C = *T.base;
    const ECatPtr& E = ModBase::cat(r.input->ext[x]);
    const int ne = E->size(), N = T.size();
    EModule out = EModule::shape(E, r.total);
    for (int t = 0; t < N; ++t)
        for (int z = 0; z < ne; ++z) out.comps[t * ne + z] = T.hom(t, r.inject(x, z));
    for (int z = 0; z < ne; ++z)
        for (int z2 = 0; z2 < ne; ++z2)
            for (int t = 0; t < N; ++t) {
                int a = r.inject(x, z), b = r.inject(x, z2);
                out.racts[(z * ne + z2) * N + t] =
                    C.vcomp(T.m(t, a, b), C.whisker_left(T.hom(t, a), kappa(*r.input, x, z, z2)));
            }
    for (int z = 0; z < ne; ++z)
        for (int t = 0; t < N; ++t)
            for (int t2 = 0; t2 < N; ++t2) out.lacts[(z * N + t) * N + t2] = T.m(t, t2, r.inject(x, z));
    return out;
}

EModule row_module(const CollageResult& r, int x) {
    const ECategory& T = *r.total;
    const Base& C = *T.base;
    const ECatPtr& E = ModBase::cat(r.input->ext[x]);
    const int ne = E->size(), N = T.size();
    EModule out = EModule::shape(r.total, E);
    for (int z = 0; z < ne; ++z)
        for (int t = 0; t < N; ++t) out.comps[z * N + t] = T.hom(r.inject(x, z), t);
    for (int t = 0; t < N; ++t)
        for (int t2 = 0; t2 < N; ++t2)
            for (int z = 0; z < ne; ++z) out.racts[(t * N + t2) * ne + z] = T.m(r.inject(x, z), t, t2);
    for (int t = 0; t < N; ++t)
        for (int z = 0; z < ne; ++z)
            for (int z2 = 0; z2 < ne; ++z2) {
                int a = r.inject(x, z), b = r.inject(x, z2);
                out.lacts[(t * ne + z) * ne + z2] =
                    C.vcomp(T.m(a, b, t), C.whisker_right(kappa(*r.input, x, z, z2), T.hom(b, t)));
            }
    return out;
}

std::pair<EModule, EModule> assemble_universal(const CollageResult& r) {
    const ModBase& M = mod_base_of(*r.input);
    const ECategory& In = *r.input;
    const ECategory& T = *r.total;
    const int n = In.size();
    if (!r.vertex) throw StructuralError("the total category has no identity module");
    EModule U = EModule::shape(r.input, r.vertex);
    EModule V = EModule::shape(r.vertex, r.input);
    for (int x = 0; x < n; ++x) {
        U.comps[x] = M.wrap(column_module(r, x));
        V.comps[x] = M.wrap(row_module(r, x));
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Hom1 s = M.compose1(U.comps[x], In.hom(x, y));
            auto W = M.witness(U.comps[x], In.hom(x, y));
            ModCell c = induced(
                *W, ModBase::mod(U.comps[y]),
                [&](int t, int w, int z) { return T.m(t, r.inject(x, z), r.inject(y, w)); }, "universal right action");
            U.racts[x * n + y] = cell2(s, U.comps[y], std::move(c));
        }
    for (int x = 0; x < n; ++x) U.lacts[x] = M.lunit(U.comps[x]);
    for (int x = 0; x < n; ++x) V.racts[x] = M.runit(V.comps[x]);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Hom1 s = M.compose1(In.hom(x, y), V.comps[y]);
            auto W = M.witness(In.hom(x, y), V.comps[y]);
            ModCell c = induced(
                *W, ModBase::mod(V.comps[x]),
                [&](int z, int t, int w) { return T.m(r.inject(x, z), r.inject(y, w), t); }, "reverse left action");
            V.lacts[x * n + y] = cell2(s, V.comps[x], std::move(c));
        }
    return {U, V};
}

void Report::add(std::string name, Verdict v, std::string detail) {
    stages.push_back({std::move(name), v, std::move(detail)});
}

void Report::add(std::string name, bool ok, std::string detail) {
    add(std::move(name), ok ? Verdict::YES : Verdict::NO, std::move(detail));
}

void Report::append(const Report& other, const std::string& prefix) {
    for (const auto& s : other.stages) stages.push_back({prefix + s.name, s.verdict, s.detail});
}

Verdict Report::verdict() const {
    bool unknown = false;
    for (const auto& s : stages) {
        if (s.verdict == Verdict::NO) return Verdict::NO;
        if (s.verdict == Verdict::UNKNOWN) unknown = true;
    }
    return unknown ? Verdict::UNKNOWN : Verdict::YES;
}

std::string Report::first_problem() const {
    for (const auto& s : stages)
        if (s.verdict != Verdict::YES) return s.name + ": " + to_string(s.verdict) + (s.detail.empty() ? "" : " (" + s.detail + ")");
    return {};
}

std::string Report::describe() const {
    std::ostringstream os;
    for (const auto& s : stages) {
        os << to_string(s.verdict) << "  " << s.name;
        if (!s.detail.empty()) os << "  " << s.detail;
        os << "\n";
    }
    return os.str();
}

namespace {

// Runs f, turning construction failures into a NO stage.
void guarded(Report& rep, const std::string& name, const std::function<void()>& f) {
    try {
        f();
    } catch (const StructuralError& e) {
        rep.add(name, Verdict::NO, e.what());
    } catch (const InternalError& e) {
        rep.add(name, Verdict::NO, e.what());
    }
}

std::string check_text(const Check& c) { return c.ok() ? std::string() : c.describe(); }

// V.U = 1 on the input and U.V = 1 on the vertex, by explicit inverse pairs.
void equivalence_stages(Report& rep, const CollageResult& r, const EModule& U, const EModule& V) {
    const ModBase& M = mod_base_of(*r.input);
    const Base& C = *M.inner();
    const ECategory& In = *r.input;
    const ECategory& T = *r.total;
    const int n = In.size(), N = T.size();

    guarded(rep, "equivalence: reverse after universal", [&] {
        ModComposite VU = mod_compose(V, U);
        EModule id = mod_id(r.input);
        ModCell phi = blank_cell(VU.composite, id), psi = blank_cell(id, VU.composite);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                Hom1 mid = M.compose1(V.comps[x], U.comps[y]);
                auto W = M.witness(V.comps[x], U.comps[y]);
                const EModule& target = ModBase::mod(In.hom(x, y));
                ModCell mu = induced(
                    *W, target, [&](int z, int w, int t) { return T.m(r.inject(x, z), t, r.inject(y, w)); },
                    "reverse after universal");
                Hom2 muh = cell2(mid, In.hom(x, y), std::move(mu));
                phi.comps[x * n + y] =
                    must(M.factor(VU.composite.at(x, y), In.hom(x, y), VU.family(x, y), {muh}), "reverse after universal");
                ModCell nu = blank_cell(target, W->composite);
                const int nw = target.na();
                for (int z = 0; z < target.nb(); ++z)
                    for (int w = 0; w < nw; ++w) {
                        int a = r.inject(x, z), b = r.inject(y, w);
                        const Hom1& h = T.hom(a, b);
                        nu.comps[z * nw + w] =
                            C.vcomp(W->cocone(z, w, b), C.vcomp(C.whisker_left(h, T.j(b)), C.runit_inv(h)));
                    }
                psi.comps[x * n + y] = M.vcomp(VU.cocone(x, y, 0), cell2(In.hom(x, y), mid, std::move(nu)));
            }
        Check a = validate(phi), b = validate(psi);
        bool inv = eq_modcell(modcell_vcomp(phi, psi), modcell_id(id)) &&
                   eq_modcell(modcell_vcomp(psi, phi), modcell_id(VU.composite));
        rep.add("equivalence: reverse after universal", a.ok() && b.ok() && inv,
                !a.ok() ? check_text(a) : !b.ok() ? check_text(b) : inv ? "" : "comparison cells are not inverse");
    });

    guarded(rep, "equivalence: universal after reverse", [&] {
        ModComposite UV = mod_compose(U, V);
        EModule id = mod_id(r.vertex);
        const Hom1& H = r.vertex->hom(0, 0);
        std::vector<Hom2> maps;
        for (int x = 0; x < n; ++x) {
            Hom1 mid = M.compose1(U.comps[x], V.comps[x]);
            auto W = M.witness(U.comps[x], V.comps[x]);
            ModCell mu = induced(
                *W, ModBase::mod(H), [&](int t, int s, int z) { return T.m(t, r.inject(x, z), s); },
                "universal after reverse");
            maps.push_back(cell2(mid, H, std::move(mu)));
        }
        Hom2 phi1 = must(M.factor(UV.composite.at(0, 0), H, UV.family(0, 0), maps), "universal after reverse");
        ModCell inner = blank_cell(ModBase::mod(H), ModBase::mod(UV.composite.at(0, 0)));
        for (int t = 0; t < N; ++t)
            for (int s = 0; s < N; ++s) {
                auto [y, w] = r.origin[s];
                auto W = M.witness(U.comps[y], V.comps[y]);
                const Hom1& h = T.hom(t, s);
                Hom2 in = C.vcomp(W->cocone(t, s, w), C.vcomp(C.whisker_left(h, T.j(s)), C.runit_inv(h)));
                inner.comps[t * N + s] = C.vcomp(ModBase::cell(UV.cocone(0, 0, y)).at(t, s), in);
            }
        Hom2 psi1 = cell2(H, UV.composite.at(0, 0), std::move(inner));
        ModCell phi = blank_cell(UV.composite, id), psi = blank_cell(id, UV.composite);
        phi.comps[0] = phi1;
        psi.comps[0] = psi1;
        Check a = validate(phi), b = validate(psi);
        bool inv = eq_modcell(modcell_vcomp(phi, psi), modcell_id(id)) &&
                   eq_modcell(modcell_vcomp(psi, phi), modcell_id(UV.composite));
        rep.add("equivalence: universal after reverse", a.ok() && b.ok() && inv,
                !a.ok() ? check_text(a) : !b.ok() ? check_text(b) : inv ? "" : "comparison cells are not inverse");
    });
}

}  // namespace

Report certify_collage(const CollageResult& r) {
    Report rep;
    Check tv = validate(*r.total);
    rep.add("total category", tv.ok(), check_text(tv));
    for (int x = 0; x < r.input->size(); ++x) {
        const std::string who = "coprojection " + r.input->names[x];
        guarded(rep, who, [&] {
            const EFunctor& K = r.coprojections[x].functor;
            Check fv = validate(K);
            rep.add(who + ": functor", fv.ok(), check_text(fv));
            if (!fv.ok()) return;
            AdjunctionWitness w = representable_adjunction(K);
            rep.add(who + ": map", adjunction_check(w));
            auto iso = module_iso(w.right, row_module(r, x));
            rep.add(who + ": right adjoint", iso.iso ? Verdict::YES : iso.exhausted ? Verdict::NO : Verdict::UNKNOWN,
                    iso.iso ? "" : "right adjoint differs from the reverse component");
        });
    }
    guarded(rep, "universal module", [&] {
        auto [U, V] = assemble_universal(r);
        Check uv = validate(U), vv = validate(V);
        rep.add("universal module", uv.ok(), check_text(uv));
        rep.add("reverse module", vv.ok(), check_text(vv));
        if (uv.ok() && vv.ok()) equivalence_stages(rep, r, U, V);
    });
    return rep;
}

TightnessReport detects_tightness(const CollageResult& r, int cap, int max_target, bool assume_all_tight,
                                  std::size_t limit) {
    TightnessReport out;
    const ModBase& M = mod_base_of(*r.input);
    const BasePtr& C = M.inner();
    const int n = r.input->size(), N = r.total->size();
    std::vector<EModule> cols;
    for (int x = 0; x < n; ++x) {
        cols.push_back(column_module(r, x));
        auto t = find_tightening(cols.back());
        out.report.add("tighten coprojection " + r.input->names[x], t.verdict, t.note);
    }
    if (assume_all_tight) {
        out.degenerate = true;
        out.report.add("detection", Verdict::YES, "degenerate: every module counts as tight");
        return out;
    }
    Verdict v = Verdict::YES;
    std::string detail;
    for (const Obj& c : C->objects_up_to(max_target)) {
        ECatPtr Hc = hat_cat(C, c);
        auto fs = enumerate_modules(r.total, Hc, std::vector<int>(N, cap), cap, limit);
        if (!fs.complete) {
            if (v == Verdict::YES) v = Verdict::UNKNOWN;
            out.frontier += "enumeration into " + c.key() + " incomplete; ";
        }
        for (const auto& f : fs.items) {
            ++out.examined;
            bool premise = true, unsure = false;
            for (int x = 0; x < n && premise; ++x) {
                auto t = find_tightening(mod_compose(f, cols[x]).composite, limit);
                if (t.verdict == Verdict::NO) premise = false;
                if (t.verdict == Verdict::UNKNOWN) unsure = true;
            }
            if (!premise) continue;
            if (unsure) {
                if (v == Verdict::YES) v = Verdict::UNKNOWN;
                continue;
            }
            ++out.premises;
            auto t = find_tightening(f, limit);
            if (t.verdict == Verdict::NO) {
                v = Verdict::NO;
                detail = "counterexample into " + c.key() + ": " + M.show1(M.wrap(f));
                break;
            }
            if (t.verdict == Verdict::UNKNOWN && v == Verdict::YES) v = Verdict::UNKNOWN;
        }
        if (v == Verdict::NO) break;
        out.frontier += "cap " + std::to_string(cap) + " into " + c.key() + " covered; ";
    }
    if (detail.empty())
        detail = std::to_string(out.examined) + " modules, " + std::to_string(out.premises) + " with tight restrictions";
    out.report.add("detection", v, detail);
    return out;
}

Report coproduct_check(const CollageResult& r) {
    Report rep;
    const ModBase& M = mod_base_of(*r.input);
    const ECategory& In = *r.input;
    bool discrete = true;
    for (int x = 0; x < In.size(); ++x)
        for (int y = 0; y < In.size(); ++y) {
            if (x == y)
                discrete = discrete && M.eq1(In.hom(x, x), M.id1(In.ext[x]));
            else
                discrete = discrete && M.carrier(In.hom(x, y)) == 0;
        }
    if (!discrete) {
        rep.add("discrete input", false, "input has nontrivial homs between distinct objects");
        return rep;
    }
    std::vector<ECatPtr> parts;
    for (const auto& e : In.ext) parts.push_back(ModBase::cat(e));
    rep.add("coproduct", same_ecat_unnamed(*r.total, *ecat_coproduct(parts)));
    return rep;
}

namespace {

struct Algebra {
    EModule g;
    ModCell action;  // g.M => g
};

}  // namespace

Report kleisli_check(const CollageResult& r, int cap, int max_target, std::size_t limit) {
    Report rep;
    if (r.input->size() != 1) {
        rep.add("one-object input", false, "input has " + std::to_string(r.input->size()) + " objects");
        return rep;
    }
    const ModBase& M = mod_base_of(*r.input);
    const BasePtr& Cp = M.inner();
    const Base& C = *Cp;
    const ECategory& In = *r.input;
    const ECatPtr& E = ModBase::cat(In.ext[0]);
    const int ne = E->size(), N = r.total->size();
    const EModule column = column_module(r, 0);

    for (const Obj& c : Cp->objects_up_to(max_target)) {
        const std::string stage = "universal property into " + c.key();
        guarded(rep, stage, [&] {
            ECatPtr Hc = hat_cat(Cp, c);
            ECatPtr H2 = hat_cat(r.input->base, M.obj(Hc));
            auto restrict = [&](const EModule& f) {
                Algebra a;
                a.g = EModule::shape(E, Hc);
                for (int z = 0; z < ne; ++z) {
                    a.g.comps[z] = f.at(0, z);
                    a.g.lacts[z] = f.lact(z, 0, 0);
                    for (int z2 = 0; z2 < ne; ++z2)
                        a.g.racts[z * ne + z2] =
                            C.vcomp(f.ract(z, z2, 0), C.whisker_left(f.at(0, z), kappa(In, 0, z, z2)));
                }
                Hom1 gh = M.wrap(a.g);
                auto W = M.witness(gh, In.hom(0, 0));
                a.action = induced(*W, a.g, [&](int, int w, int z) { return f.ract(z, w, 0); }, "restricted action");
                return a;
            };
            auto lift = [&](const Algebra& a) {
                EModule f = EModule::shape(r.total, Hc);
                auto W = M.witness(M.wrap(a.g), In.hom(0, 0));
                for (int z = 0; z < N; ++z) {
                    f.comps[z] = a.g.at(0, z);
                    f.lacts[z] = a.g.lact(z, 0, 0);
                    for (int w = 0; w < N; ++w) f.racts[z * N + w] = C.vcomp(a.action.at(0, w), W->cocone(0, w, z));
                }
                return f;
            };
            auto is_algebra = [&](const Algebra& a) {
                EModule L = EModule::shape(r.input, H2);
                Hom1 gh = M.wrap(a.g);
                L.comps[0] = gh;
                L.racts[0] = cell2(M.compose1(gh, In.hom(0, 0)), gh, a.action);
                L.lacts[0] = M.lunit(gh);
                return validate(L).ok();
            };

            auto fs = enumerate_modules(r.total, Hc, std::vector<int>(N, cap), cap, limit);
            auto gs = enumerate_modules(E, Hc, std::vector<int>(ne, cap), cap, limit);
            bool complete = fs.complete && gs.complete;
            std::vector<Algebra> algebras;
            for (const auto& g : gs.items) {
                auto W = M.witness(M.wrap(g), In.hom(0, 0));
                auto acts = enumerate_modcells(W->composite, g, limit);
                if (!acts.complete) complete = false;
                for (const auto& act : acts.items) {
                    Algebra a{g, act};
                    if (is_algebra(a)) algebras.push_back(a);
                }
            }
            std::string problem;
            for (std::size_t i = 0; i < fs.items.size() && problem.empty(); ++i) {
                const EModule& f = fs.items[i];
                Algebra a = restrict(f);
                if (!is_algebra(a)) problem = "restriction of module " + std::to_string(i) + " is not an algebra";
                else if (!same_module(lift(a), f)) problem = "lifting does not recover module " + std::to_string(i);
                else if (i < 8 && !module_iso(a.g, mod_compose(f, column).composite).iso)
                    problem = "restriction differs from composition with the coprojection";
            }
            for (std::size_t i = 0; i < algebras.size() && problem.empty(); ++i) {
                EModule f = lift(algebras[i]);
                if (!validate(f).ok()) {
                    problem = "lift of algebra " + std::to_string(i) + " is not a module";
                    break;
                }
                Algebra back = restrict(f);
                if (!same_module(back.g, algebras[i].g) || !eq_modcell(back.action, algebras[i].action))
                    problem = "restricting the lift of algebra " + std::to_string(i) + " changes it";
                else if (std::none_of(fs.items.begin(), fs.items.end(), [&](const EModule& h) { return same_module(h, f); }))
                    problem = "lift of algebra " + std::to_string(i) + " is missing from the enumeration";
            }
            if (problem.empty() && fs.items.size() != algebras.size())
                problem = "counts differ: " + std::to_string(fs.items.size()) + " modules, " +
                          std::to_string(algebras.size()) + " algebras";
            std::string detail = std::to_string(fs.items.size()) + " modules and " + std::to_string(algebras.size()) +
                                 " algebras up to carrier " + std::to_string(cap);
            if (!problem.empty())
                rep.add(stage, Verdict::NO, problem);
            else
                rep.add(stage, complete ? Verdict::YES : Verdict::UNKNOWN, detail);
        });
    }
    return rep;
}

Report idempotence_probe(const ECatPtr& input) {
    Report rep;
    guarded(rep, "collage", [&] {
        CollageResult r = collage(input);
        Check hv = validate(*r.vertex);
        rep.add("hat of total", hv.ok(), check_text(hv));
        const ModBase& M = mod_base_of(*input);
        if (input->size() == 1 && M.eq1(input->hom(0, 0), M.id1(input->ext[0])))
            rep.add("identity input", same_ecat_unnamed(*ModBase::cat(input->ext[0]), *r.total),
                    "total should be the extent itself");
        Report c = certify_collage(r);
        for (const auto& s : c.stages)
            if (s.name.rfind("universal", 0) == 0 || s.name.rfind("reverse", 0) == 0 ||
                s.name.rfind("equivalence", 0) == 0)
                rep.stages.push_back(s);
    });
    return rep;
}

Hom1 BaseMorphism::map1(const Hom1& f) const {
    switch (kind) {
    case Kind::IDENTITY:
        return f;
    case Kind::SPAN_TO_REL: {
        const auto& Q = dynamic_cast<const QuantaloidBase&>(*dst);
        const auto& s = SpanBase::data(f);
        const int a = set_size(f.src), b = set_size(f.dst);
        std::vector<int> e(a * b, Q.quantale().bottom());
        for (int k = 0; k < s.apex; ++k) e[s.right[k] * a + s.left[k]] = Q.quantale().top();
        return Q.make(a, b, std::move(e));
    }
    case Kind::QUANTALE_HOM: {
        const auto& Q = dynamic_cast<const QuantaloidBase&>(*dst);
        const auto& m = QuantaloidBase::data(f);
        std::vector<int> e;
        for (int v : m.e) e.push_back(elements[v]);
        return Q.make(m.cols, m.rows, std::move(e));
    }
    }
    throw InternalError("unknown base morphism");
}

BaseMorphism identity_morphism(BasePtr C) {
    BaseMorphism F;
    F.kind = BaseMorphism::Kind::IDENTITY;
    F.name = "identity on " + C->name();
    F.src = C;
    F.dst = C;
    return F;
}

BaseMorphism span_to_rel(BasePtr spans) {
    if (!dynamic_cast<const SpanBase*>(spans.get())) throw StructuralError("span_to_rel starts at the span base");
    BaseMorphism F;
    F.kind = BaseMorphism::Kind::SPAN_TO_REL;
    F.name = "relation image";
    F.src = std::move(spans);
    F.dst = std::make_shared<QuantaloidBase>(Quantale::boolean(), F.src->arity());
    return F;
}

BaseMorphism quantale_hom(BasePtr src, BasePtr dst, std::vector<int> elements) {
    if (!dynamic_cast<const QuantaloidBase*>(src.get()) || !dynamic_cast<const QuantaloidBase*>(dst.get()))
        throw StructuralError("quantale_hom runs between quantaloid bases");
    BaseMorphism F;
    F.kind = BaseMorphism::Kind::QUANTALE_HOM;
    F.name = src->name() + " -> " + dst->name();
    F.src = std::move(src);
    F.dst = std::move(dst);
    F.elements = std::move(elements);
    return F;
}

BaseMorphism minplus_truncation(BasePtr src, int K2) {
    auto q = dynamic_cast<const QuantaloidBase*>(src.get());
    if (!q) throw StructuralError("minplus_truncation starts at a quantaloid");
    const int K = q->quantale().size() - 2;
    if (K2 < 0 || K2 > K) throw StructuralError("truncation cap must lie between 0 and the source cap");
    std::vector<int> e;
    for (int a = 0; a <= K + 1; ++a) e.push_back(a <= K2 ? a : K2 + 1);
    auto dst = std::make_shared<QuantaloidBase>(Quantale::minplus(K2), src->arity());
    return quantale_hom(std::move(src), dst, std::move(e));
}

Check spot_check(const BaseMorphism& F) {
    switch (F.kind) {
    case BaseMorphism::Kind::IDENTITY:
        return Check::pass();
    case BaseMorphism::Kind::QUANTALE_HOM: {
        const Quantale& p = dynamic_cast<const QuantaloidBase&>(*F.src).quantale();
        const Quantale& q = dynamic_cast<const QuantaloidBase&>(*F.dst).quantale();
        if (static_cast<int>(F.elements.size()) != p.size()) return Check::structural("element map has the wrong size");
        for (int v : F.elements)
            if (v < 0 || v >= q.size()) return Check::structural("element map leaves the target quantale");
        const auto& f = F.elements;
        if (f[p.bottom()] != q.bottom()) return Check::fail("bottom", p.name(p.bottom()));
        if (f[p.unit()] != q.unit()) return Check::fail("unit", p.name(p.unit()));
        for (int a = 0; a < p.size(); ++a)
            for (int b = 0; b < p.size(); ++b) {
                if (f[p.join(a, b)] != q.join(f[a], f[b])) return Check::fail("joins", p.name(a) + "," + p.name(b));
                if (f[p.tensor(a, b)] != q.tensor(f[a], f[b])) return Check::fail("tensor", p.name(a) + "," + p.name(b));
            }
        return Check::pass();
    }
    case BaseMorphism::Kind::SPAN_TO_REL: {
        const Base& S = *F.src;
        const Base& Q = *F.dst;
        for (int a = 0; a <= 2; ++a) {
            if (!Q.eq1(F.map1(S.id1(set_obj(a))), Q.id1(set_obj(a)))) return Check::fail("identities", std::to_string(a));
            for (int b = 0; b <= 2; ++b) {
                auto fs = S.enumerate1(set_obj(a), set_obj(b), 2).items;
                for (const auto& f : fs)
                    for (const auto& f2 : fs) {
                        Hom1 sum = S.coproduct({f, f2}, f.src, f.dst).sum;
                        if (!Q.eq1(F.map1(sum), Q.coproduct({F.map1(f), F.map1(f2)}, f.src, f.dst).sum))
                            return Check::fail("joins", S.show1(f) + " + " + S.show1(f2));
                    }
                for (int c = 0; c <= 2; ++c) {
                    auto gs = S.enumerate1(set_obj(b), set_obj(c), 2).items;
                    for (const auto& f : fs)
                        for (const auto& g : gs)
                            if (!Q.eq1(F.map1(S.compose1(g, f)), Q.compose1(F.map1(g), F.map1(f))))
                                return Check::fail("composition", S.show1(g) + " . " + S.show1(f));
                }
            }
        }
        return Check::pass();
    }
    }
    return Check::structural("unknown base morphism");
}

namespace {

// Pushes C-data forward along a base morphism into a quantaloid, where every
// 2-cell is the order relation and exists exactly when it is needed.
class Transport {
public:
    explicit Transport(const BaseMorphism& F) : F_(F), Q_(dynamic_cast<const QuantaloidBase&>(*F.dst)) {}

    Hom2 token(const Hom1& s, const Hom1& t) const { return Q_.token(s, t); }

    ECatPtr cat(const ECatPtr& A) {
        auto it = memo_.find(A.get());
        if (it != memo_.end()) return it->second;
        auto out = std::make_shared<ECategory>();
        out->base = F_.dst;
        out->names = A->names;
        out->ext = A->ext;
        const int n = A->size();
        for (const auto& h : A->homs) out->homs.push_back(F_.map1(h));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    out->comps.push_back(token(Q_.compose1(out->hom(x, y), out->hom(y, z)), out->hom(x, z)));
        for (int x = 0; x < n; ++x) out->units.push_back(token(Q_.id1(out->ext[x]), out->hom(x, x)));
        memo_.emplace(A.get(), out);
        return out;
    }

    EModule module(const EModule& T) {
        ECatPtr A = cat(T.src), B = cat(T.dst);
        EModule out = EModule::shape(A, B);
        const int na = T.na(), nb = T.nb();
        for (std::size_t i = 0; i < T.comps.size(); ++i) out.comps[i] = F_.map1(T.comps[i]);
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < na; ++y)
                for (int u = 0; u < nb; ++u)
                    out.racts[(x * na + y) * nb + u] = token(Q_.compose1(out.at(u, x), A->hom(x, y)), out.at(u, y));
        for (int x = 0; x < na; ++x)
            for (int u = 0; u < nb; ++u)
                for (int v = 0; v < nb; ++v)
                    out.lacts[(x * nb + u) * nb + v] = token(Q_.compose1(B->hom(u, v), out.at(v, x)), out.at(u, x));
        return out;
    }

    ModCell tokens(const EModule& s, const EModule& t) const {
        ModCell c = blank_cell(s, t);
        for (std::size_t i = 0; i < s.comps.size(); ++i) c.comps[i] = token(s.comps[i], t.comps[i]);
        return c;
    }

    ECatPtr input(const ECatPtr& In, const ModBase& M) {
        auto M2 = std::make_shared<ModBase>(F_.dst, M.arity());
        auto out = std::make_shared<ECategory>();
        out->base = M2;
        out->names = In->names;
        const int n = In->size();
        for (const auto& e : In->ext) out->ext.push_back(M2->obj(cat(ModBase::cat(e))));
        for (const auto& h : In->homs) out->homs.push_back(M2->wrap(module(ModBase::mod(h))));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    Hom1 s = M2->compose1(out->hom(x, y), out->hom(y, z));
                    out->comps.push_back(
                        cell2(s, out->hom(x, z), tokens(ModBase::mod(s), ModBase::mod(out->hom(x, z)))));
                }
        for (int x = 0; x < n; ++x) {
            Hom1 s = M2->id1(out->ext[x]);
            out->units.push_back(cell2(s, out->hom(x, x), tokens(ModBase::mod(s), ModBase::mod(out->hom(x, x)))));
        }
        return out;
    }

private:
    const BaseMorphism& F_;
    const QuantaloidBase& Q_;
    std::map<const ECategory*, ECatPtr> memo_;
};

}  // namespace

Report absoluteness_probe(const CollageResult& r, const BaseMorphism& F) {
    Report rep;
    const ModBase& M = mod_base_of(*r.input);
    if (F.src->name() != M.inner()->name()) {
        rep.add("source base", false, F.name + " does not start at " + M.inner()->name());
        return rep;
    }
    Check sc = spot_check(F);
    rep.add("cocontinuity", sc.ok(), check_text(sc));
    if (!sc.ok()) return rep;
    if (F.kind == BaseMorphism::Kind::IDENTITY) {
        rep.append(certify_collage(r), "image: ");
        return rep;
    }
    guarded(rep, "image", [&] {
        Transport tr(F);
        ECatPtr In2 = tr.input(r.input, M);
        ECatPtr T2 = tr.cat(r.total);
        Check iv = validate(*In2);
        rep.add("image input", iv.ok(), check_text(iv));
        rep.add("image of total is the flattened image", same_ecat_unnamed(*T2, *flatten(In2)));
        rep.append(certify_collage(collage_over(In2, T2)), "image: ");
    });
    return rep;
}

ECatPtr metric_space(BasePtr Q, const std::vector<int>& dist, int n) {
    auto qb = dynamic_cast<const QuantaloidBase*>(Q.get());
    if (!qb) throw StructuralError("metric spaces live over a quantaloid");
    if (static_cast<int>(dist.size()) != n * n) throw StructuralError("distance table has the wrong size");
    const int inf = qb->quantale().bottom();
    auto out = std::make_shared<ECategory>();
    out->base = Q;
    for (int p = 0; p < n; ++p) {
        out->names.push_back("p" + std::to_string(p));
        out->ext.push_back(set_obj(1));
    }
    for (int v : dist) out->homs.push_back(qb->make(1, 1, {(v < 0 || v > inf) ? inf : v}));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                out->comps.push_back(qb->token(qb->compose1(out->hom(x, y), out->hom(y, z)), out->hom(x, z)));
    for (int x = 0; x < n; ++x) out->units.push_back(qb->token(qb->id1(set_obj(1)), out->hom(x, x)));
    return out;
}

MetricDemo metric_collage_demo(int cap, const std::vector<std::vector<int>>& spaces, const std::vector<MetricGlue>& glue) {
    auto Qp = std::make_shared<QuantaloidBase>(Quantale::minplus(cap));
    const QuantaloidBase& Q = *Qp;
    const Quantale& q = Q.quantale();
    const int inf = cap + 1;
    auto M = std::make_shared<ModBase>(Qp, ArityClass::FINITE);
    const int k = static_cast<int>(spaces.size());
    std::vector<int> size, offset;
    std::vector<ECatPtr> E;
    int N = 0;
    for (const auto& d : spaces) {
        int n = 0;
        while (n * n < static_cast<int>(d.size())) ++n;
        if (n * n != static_cast<int>(d.size())) throw StructuralError("space distance table is not square");
        offset.push_back(N);
        size.push_back(n);
        N += n;
        E.push_back(metric_space(Qp, d, n));
    }
    auto clampv = [&](int v) { return (v < 0 || v > cap) ? inf : v; };
    std::vector<const MetricGlue*> direct(k * k, nullptr);
    for (const auto& g : glue) {
        if (g.from < 0 || g.to >= k || g.from >= g.to) throw StructuralError("glue must run from a lower to a higher space");
        if (static_cast<int>(g.dist.size()) != size[g.from] * size[g.to]) throw StructuralError("glue table has the wrong size");
        direct[g.from * k + g.to] = &g;
    }
    auto in = std::make_shared<ECategory>();
    in->base = M;
    for (int i = 0; i < k; ++i) {
        in->names.push_back("s" + std::to_string(i));
        in->ext.push_back(M->obj(E[i]));
    }
    in->homs.resize(k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i == j) in->homs[i * k + j] = M->id1(in->ext[i]);
            else if (i > j) in->homs[i * k + j] = M->initial(in->ext[j], in->ext[i]);
    for (int gap = 1; gap < k; ++gap)
        for (int i = 0; i + gap < k; ++i) {
            const int j = i + gap, ni = size[i], nj = size[j];
            std::vector<Hom1> parts;
            if (const MetricGlue* g = direct[i * k + j]) {
                EModule T = EModule::shape(E[j], E[i]);
                for (int p = 0; p < ni; ++p)
                    for (int r = 0; r < nj; ++r) {
                        int best = inf;
                        for (int p2 = 0; p2 < ni; ++p2)
                            for (int r2 = 0; r2 < nj; ++r2) {
                                int d = q.tensor(spaces[i][p * ni + p2],
                                                 q.tensor(clampv(g->dist[p2 * nj + r2]), spaces[j][r2 * nj + r]));
                                best = q.join(best, d);
                            }
                        T.comps[p * nj + r] = Q.make(1, 1, {best});
                    }
                for (int r = 0; r < nj; ++r)
                    for (int r2 = 0; r2 < nj; ++r2)
                        for (int p = 0; p < ni; ++p)
                            T.racts[(r * nj + r2) * ni + p] = Q.token(Q.compose1(T.at(p, r), E[j]->hom(r, r2)), T.at(p, r2));
                for (int r = 0; r < nj; ++r)
                    for (int p = 0; p < ni; ++p)
                        for (int p2 = 0; p2 < ni; ++p2)
                            T.lacts[(r * ni + p) * ni + p2] = Q.token(Q.compose1(E[i]->hom(p, p2), T.at(p2, r)), T.at(p, r));
                parts.push_back(M->wrap(T));
            }
            for (int m = i + 1; m < j; ++m) parts.push_back(M->compose1(in->hom(i, m), in->hom(m, j)));
            if (parts.empty()) in->homs[i * k + j] = M->initial(in->ext[j], in->ext[i]);
            else if (parts.size() == 1) in->homs[i * k + j] = parts[0];
            else in->homs[i * k + j] = M->coproduct(parts, in->ext[j], in->ext[i]).sum;
        }
    auto tokens = [&](const Hom1& s, const Hom1& t) {
        const EModule& a = ModBase::mod(s);
        const EModule& b = ModBase::mod(t);
        ModCell c = blank_cell(a, b);
        for (std::size_t i = 0; i < a.comps.size(); ++i) c.comps[i] = Q.token(a.comps[i], b.comps[i]);
        return cell2(s, t, std::move(c));
    };
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (int z = 0; z < k; ++z) in->comps.push_back(tokens(M->compose1(in->hom(x, y), in->hom(y, z)), in->hom(x, z)));
    for (int x = 0; x < k; ++x) in->units.push_back(tokens(M->id1(in->ext[x]), in->hom(x, x)));
    Check v = validate(*in);
    if (!v.ok()) throw StructuralError("glued input is not a category: " + v.describe());

    MetricDemo out;
    out.collage = collage(in);
    out.points = N;
    const ECategory& T = *out.collage.total;
    for (int s = 0; s < N; ++s)
        for (int t = 0; t < N; ++t) out.table.push_back(QuantaloidBase::data(T.hom(s, t)).e[0]);
    std::vector<int> raw(N * N, inf);
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < size[i]; ++p)
            for (int r = 0; r < size[i]; ++r) raw[(offset[i] + p) * N + offset[i] + r] = clampv(spaces[i][p * size[i] + r]);
    for (const auto& g : glue)
        for (int p = 0; p < size[g.from]; ++p)
            for (int r = 0; r < size[g.to]; ++r)
                raw[(offset[g.from] + p) * N + offset[g.to] + r] = clampv(g.dist[p * size[g.to] + r]);
    out.oracle = minplus_shortest(raw, N, cap);
    out.agrees = out.table == out.oracle;
    return out;
}

namespace {

std::vector<int> random_groups(Corpus& c, int n, int max_groups, int max_size) {
    for (;;) {
        int k = c.uniform(1, std::min(n, max_groups));
        std::vector<int> g(n);
        for (int& v : g) v = c.uniform(0, k - 1);
        g = normalize_groups(g);
        std::vector<int> count(n, 0);
        bool ok = true;
        for (int v : g) ok = ok && ++count[v] <= max_size;
        if (ok) return g;
    }
}

ECatPtr random_span_total(Corpus& c, const BasePtr& spans, int max_objects) {
    FinCategory K = c.category(4, 12);
    auto g = random_groups(c, K.nobj, max_objects, K.nobj);
    return fincat_partitioned(K, g, spans);
}

ECatPtr preorder_ecat(const BasePtr& Qp, int n, const std::vector<bool>& le, const std::vector<int>& group) {
    const auto& Q = dynamic_cast<const QuantaloidBase&>(*Qp);
    int k = 0;
    for (int g : group) k = std::max(k, g + 1);
    std::vector<std::vector<int>> mem(k);
    for (int a = 0; a < n; ++a) mem[group[a]].push_back(a);
    auto out = std::make_shared<ECategory>();
    out->base = Qp;
    for (int x = 0; x < k; ++x) {
        out->names.push_back("o" + std::to_string(x));
        out->ext.push_back(set_obj(static_cast<int>(mem[x].size())));
    }
    const int top = Q.quantale().top(), bot = Q.quantale().bottom();
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
            std::vector<int> e;
            for (int i : mem[x])
                for (int j : mem[y]) e.push_back(le[i * n + j] ? top : bot);
            out->homs.push_back(Q.make(static_cast<int>(mem[y].size()), static_cast<int>(mem[x].size()), e));
        }
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (int z = 0; z < k; ++z)
                out->comps.push_back(Q.token(Q.compose1(out->hom(x, y), out->hom(y, z)), out->hom(x, z)));
    for (int x = 0; x < k; ++x) out->units.push_back(Q.token(Q.id1(out->ext[x]), out->hom(x, x)));
    return out;
}

ECatPtr random_bool_total(Corpus& c, const BasePtr& Q, int max_objects) {
    const int n = c.uniform(1, 5);
    std::vector<bool> le(n * n, false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) le[i * n + j] = i == j || c.uniform(0, 2) == 0;
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (le[i * n + m] && le[m * n + j]) le[i * n + j] = true;
    auto g = random_groups(c, n, max_objects, 2);
    return preorder_ecat(Q, n, le, g);
}

ECatPtr random_total(Corpus& c, const ModBasePtr& M, int max_objects) {
    if (M->inner()->kind() == BaseKind::SPAN_FINSET) return random_span_total(c, M->inner(), max_objects);
    return random_bool_total(c, M->inner(), max_objects);
}

}  // namespace

ECatPtr random_span_mod_category(Corpus& c, const ModBasePtr& M) {
    if (M->inner()->kind() != BaseKind::SPAN_FINSET) throw StructuralError("span corpus needs Mod over spans");
    ECatPtr A = random_span_total(c, M->inner(), 4);
    auto g = random_groups(c, A->size(), 3, 3);
    return blocked(A, g, c.uniform(0, 3) == 0, M);
}

ECatPtr random_bool_mod_category(Corpus& c, const ModBasePtr& M) {
    if (M->inner()->kind() != BaseKind::BOOLEAN_QUANTALE) throw StructuralError("boolean corpus needs Mod over relations");
    ECatPtr A = random_bool_total(c, M->inner(), 4);
    auto g = random_groups(c, A->size(), 3, 3);
    return blocked(A, g, c.uniform(0, 3) == 0, M);
}

ECatPtr random_monad(Corpus& c, const ModBasePtr& M) {
    ECatPtr A = random_total(c, M, 3);
    return blocked(A, std::vector<int>(A->size(), 0), true, M);
}

Gluing random_gluing(Corpus& c, int cap) {
    Gluing out;
    const int inf = cap + 1;
    const int k = c.uniform(2, 3);
    std::vector<int> size;
    for (int i = 0; i < k; ++i) {
        const int n = c.uniform(1, 3);
        size.push_back(n);
        std::vector<int> d(n * n, inf);
        for (int p = 0; p < n; ++p)
            for (int r = 0; r < n; ++r)
                if (p == r) d[p * n + r] = 0;
                else if (c.uniform(0, 2) != 0) d[p * n + r] = c.uniform(1, std::max(1, cap / 2));
        for (int m = 0; m < n; ++m)
            for (int p = 0; p < n; ++p)
                for (int r = 0; r < n; ++r)
                    if (d[p * n + m] != inf && d[m * n + r] != inf) {
                        int s = d[p * n + m] + d[m * n + r];
                        if (s <= cap) d[p * n + r] = std::min(d[p * n + r], s);
                    }
        out.spaces.push_back(d);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (j != i + 1 && c.uniform(0, 1) == 0) continue;
            MetricGlue g;
            g.from = i;
            g.to = j;
            for (int p = 0; p < size[i] * size[j]; ++p) g.dist.push_back(c.uniform(0, 2) == 0 ? -1 : c.uniform(0, cap));
            out.glue.push_back(g);
        }
    return out;
}

}  // namespace ck
