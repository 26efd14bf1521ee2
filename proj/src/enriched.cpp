#include "collagekit/enriched.hpp"

#include <sstream>

#include "collagekit/coherence.hpp"
#include "collagekit/oracle.hpp"
#include "collagekit/span.hpp"

namespace ck {

Check Check::fail(std::string axiom, std::string where, std::string detail) {
    Check c;
    c.status = FAIL;
    c.axiom = std::move(axiom);
    c.where = std::move(where);
    c.detail = std::move(detail);
    return c;
}

Check Check::structural(std::string detail) {
    Check c;
    c.status = STRUCTURAL;
    c.axiom = "structure";
    c.detail = std::move(detail);
    return c;
}

std::string Check::describe() const {
    if (status == PASS) return "PASS";
    std::string s = status == FAIL ? "FAIL " + axiom : "STRUCTURAL";
    if (!where.empty()) s += " at " + where;
    if (!detail.empty()) s += ": " + detail;
    return s;
}

int ECategory::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == name) return i;
    throw StructuralError("no object named " + name);
}

EModule EModule::shape(ECatPtr src, ECatPtr dst) {
    EModule T;
    const int na = src->size(), nb = dst->size();
    T.src = std::move(src);
    T.dst = std::move(dst);
    T.comps.resize(nb * na);
    T.racts.resize(na * na * nb);
    T.lacts.resize(na * nb * nb);
    return T;
}

namespace {

std::string tuple(const ECategory& A, std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
        if (!first) s += ",";
        s += A.names[x];
        first = false;
    }
    return s + ")";
}

std::string tuple2(const ECategory& A, const ECategory& B, std::initializer_list<int> as, std::initializer_list<int> bs) {
    std::string s = "(";
    bool first = true;
    for (int b : bs) {
        if (!first) s += ",";
        s += B.names[b];
        first = false;
    }
    for (int a : as) {
        if (!first) s += ",";
        s += A.names[a];
        first = false;
    }
    return s + ")";
}

bool boundary(const Base& B, const Hom2& a, const Hom1& s, const Hom1& t) { return B.eq1(a.s, s) && B.eq1(a.t, t); }

struct StructureError {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw StructureError{what};
}

template <class F> Check guarded(F&& f) {
    try {
        return f();
    } catch (const StructureError& e) {
        return Check::structural(e.what);
    } catch (const StructuralError& e) {
        return Check::structural(e.what());
    }
}

void check_category_structure(const ECategory& A) {
    const int n = A.size();
    expect(A.base != nullptr, "category has no base");
    const Base& B = *A.base;
    expect(static_cast<int>(A.ext.size()) == n, "extent table has wrong length");
    expect(static_cast<int>(A.homs.size()) == n * n, "hom table has wrong size");
    expect(static_cast<int>(A.comps.size()) == n * n * n, "composition table has wrong size");
    expect(static_cast<int>(A.units.size()) == n, "unit table has wrong size");
    if (B.arity() == ArityClass::SINGLETON) expect(n == 1, "arity {1} allows exactly one object");
    for (int x = 0; x < n; ++x) B.check_obj(A.ext[x]);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Hom1& h = A.hom(x, y);
            expect(h.src == A.ext[y] && h.dst == A.ext[x], "hom" + tuple(A, {x, y}) + " has the wrong boundary");
            B.check1(h);
        }
    for (int x = 0; x < n; ++x) {
        expect(boundary(B, A.j(x), B.id1(A.ext[x]), A.hom(x, x)), "unit at " + A.names[x] + " has the wrong boundary");
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                expect(boundary(B, A.m(x, y, z), B.compose1(A.hom(x, y), A.hom(y, z)), A.hom(x, z)),
                       "composition at " + tuple(A, {x, y, z}) + " has the wrong boundary");
    }
}

void check_module_structure(const EModule& T) {
    expect(T.src && T.dst, "module has no boundary categories");
    expect(T.src->base == T.dst->base || T.src->base->name() == T.dst->base->name(),
           "module boundaries live over different bases");
    const Base& B = *T.src->base;
    const ECategory& A = *T.src;
    const ECategory& C = *T.dst;
    const int na = A.size(), nb = C.size();
    expect(static_cast<int>(T.comps.size()) == na * nb, "component table has wrong size");
    expect(static_cast<int>(T.racts.size()) == na * na * nb, "right action table has wrong size");
    expect(static_cast<int>(T.lacts.size()) == na * nb * nb, "left action table has wrong size");
    for (int u = 0; u < nb; ++u)
        for (int x = 0; x < na; ++x) {
            const Hom1& c = T.at(u, x);
            expect(c.src == A.ext[x] && c.dst == C.ext[u], "component " + tuple2(A, C, {x}, {u}) + " has the wrong boundary");
            B.check1(c);
        }
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int u = 0; u < nb; ++u)
                expect(boundary(B, T.ract(x, y, u), B.compose1(T.at(u, x), A.hom(x, y)), T.at(u, y)),
                       "right action " + tuple2(A, C, {x, y}, {u}) + " has the wrong boundary");
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nb; ++u)
            for (int v = 0; v < nb; ++v)
                expect(boundary(B, T.lact(x, u, v), B.compose1(C.hom(u, v), T.at(v, x)), T.at(u, x)),
                       "left action " + tuple2(A, C, {x}, {u, v}) + " has the wrong boundary");
}

void check_functor_structure(const EFunctor& D) {
    expect(D.src && D.dst, "functor has no boundary categories");
    const Base& B = *D.src->base;
    const ECategory& A = *D.src;
    const ECategory& C = *D.dst;
    const int n = A.size();
    expect(static_cast<int>(D.obj.size()) == n && static_cast<int>(D.cells.size()) == n, "object map has wrong length");
    expect(static_cast<int>(D.sq.size()) == n * n, "square table has wrong size");
    for (int x = 0; x < n; ++x) {
        expect(D.obj[x] >= 0 && D.obj[x] < C.size(), "object map leaves the codomain");
        expect(D.cell(x).src == A.ext[x] && D.cell(x).dst == C.ext[D.obj[x]], "cell at " + A.names[x] + " has the wrong boundary");
        B.check1(D.cell(x));
        expect(B.is_tight(D.cell(x)), "cell at " + A.names[x] + " is not tight");
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            expect(boundary(B, D.square(x, y), B.compose1(D.cell(x), A.hom(x, y)),
                            B.compose1(C.hom(D.obj[x], D.obj[y]), D.cell(y))),
                   "square at " + tuple(A, {x, y}) + " has the wrong boundary");
}

bool same_functor_boundary(const EFunctor& D, const EFunctor& E) {
    return D.src == E.src && D.dst == E.dst;
}

}  // namespace

Check validate(const ECategory& A) {
    return guarded([&]() -> Check {
        check_category_structure(A);
        const Base& B = *A.base;
        const int n = A.size();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                // m.(j*1) = lunit and m.(1*j) = runit
                Chain left(B, {A.hom(x, y)}, A.ext[y]);
                left.apply(0, 0, A.j(x), {A.hom(x, x)}).apply(0, 2, A.m(x, x, y), {A.hom(x, y)});
                if (!B.eq2(left.cell(), B.id2(A.hom(x, y)))) return Check::fail("left unit", tuple(A, {x, y}));
                Chain right(B, {A.hom(x, y)}, A.ext[y]);
                right.apply(1, 0, A.j(y), {A.hom(y, y)}).apply(0, 2, A.m(x, y, y), {A.hom(x, y)});
                if (!B.eq2(right.cell(), B.id2(A.hom(x, y)))) return Check::fail("right unit", tuple(A, {x, y}));
            }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    for (int w = 0; w < n; ++w) {
                        std::vector<Hom1> l{A.hom(x, y), A.hom(y, z), A.hom(z, w)};
                        Chain p(B, l, A.ext[w]), q(B, l, A.ext[w]);
                        p.apply(0, 2, A.m(x, y, z), {A.hom(x, z)}).apply(0, 2, A.m(x, z, w), {A.hom(x, w)});
                        q.apply(1, 2, A.m(y, z, w), {A.hom(y, w)}).apply(0, 2, A.m(x, y, w), {A.hom(x, w)});
                        if (!B.eq2(p.cell(), q.cell())) return Check::fail("associativity", tuple(A, {x, y, z, w}));
                    }
        return Check::pass();
    });
}

Check validate(const EModule& T) {
    return guarded([&]() -> Check {
        check_module_structure(T);
        const Base& B = *T.src->base;
        const ECategory& A = *T.src;
        const ECategory& C = *T.dst;
        const int na = A.size(), nb = C.size();
        for (int u = 0; u < nb; ++u)
            for (int x = 0; x < na; ++x) {
                Chain r(B, {T.at(u, x)}, A.ext[x]);
                r.apply(1, 0, A.j(x), {A.hom(x, x)}).apply(0, 2, T.ract(x, x, u), {T.at(u, x)});
                if (!B.eq2(r.cell(), B.id2(T.at(u, x)))) return Check::fail("right action unit", tuple2(A, C, {x}, {u}));
                Chain l(B, {T.at(u, x)}, A.ext[x]);
                l.apply(0, 0, C.j(u), {C.hom(u, u)}).apply(0, 2, T.lact(x, u, u), {T.at(u, x)});
                if (!B.eq2(l.cell(), B.id2(T.at(u, x)))) return Check::fail("left action unit", tuple2(A, C, {x}, {u}));
            }
        for (int u = 0; u < nb; ++u)
            for (int x = 0; x < na; ++x)
                for (int y = 0; y < na; ++y)
                    for (int z = 0; z < na; ++z) {
                        std::vector<Hom1> l{T.at(u, x), A.hom(x, y), A.hom(y, z)};
                        Chain p(B, l, A.ext[z]), q(B, l, A.ext[z]);
                        p.apply(1, 2, A.m(x, y, z), {A.hom(x, z)}).apply(0, 2, T.ract(x, z, u), {T.at(u, z)});
                        q.apply(0, 2, T.ract(x, y, u), {T.at(u, y)}).apply(0, 2, T.ract(y, z, u), {T.at(u, z)});
                        if (!B.eq2(p.cell(), q.cell()))
                            return Check::fail("right action associativity", tuple2(A, C, {x, y, z}, {u}));
                    }
        for (int u = 0; u < nb; ++u)
            for (int v = 0; v < nb; ++v)
                for (int w = 0; w < nb; ++w)
                    for (int x = 0; x < na; ++x) {
                        std::vector<Hom1> l{C.hom(u, v), C.hom(v, w), T.at(w, x)};
                        Chain p(B, l, A.ext[x]), q(B, l, A.ext[x]);
                        p.apply(0, 2, C.m(u, v, w), {C.hom(u, w)}).apply(0, 2, T.lact(x, u, w), {T.at(u, x)});
                        q.apply(1, 2, T.lact(x, v, w), {T.at(v, x)}).apply(0, 2, T.lact(x, u, v), {T.at(u, x)});
                        if (!B.eq2(p.cell(), q.cell()))
                            return Check::fail("left action associativity", tuple2(A, C, {x}, {u, v, w}));
                    }
        for (int u = 0; u < nb; ++u)
            for (int v = 0; v < nb; ++v)
                for (int x = 0; x < na; ++x)
                    for (int y = 0; y < na; ++y) {
                        std::vector<Hom1> l{C.hom(u, v), T.at(v, x), A.hom(x, y)};
                        Chain p(B, l, A.ext[y]), q(B, l, A.ext[y]);
                        p.apply(0, 2, T.lact(x, u, v), {T.at(u, x)}).apply(0, 2, T.ract(x, y, u), {T.at(u, y)});
                        q.apply(1, 2, T.ract(x, y, v), {T.at(v, y)}).apply(0, 2, T.lact(y, u, v), {T.at(u, y)});
                        if (!B.eq2(p.cell(), q.cell()))
                            return Check::fail("actions commute", tuple2(A, C, {x, y}, {u, v}));
                    }
        return Check::pass();
    });
}

Check validate(const ModCell& f) {
    return guarded([&]() -> Check {
        const EModule& T = f.src;
        const EModule& S = f.dst;
        check_module_structure(T);
        check_module_structure(S);
        expect(T.src == S.src && T.dst == S.dst, "module cell between modules with different boundaries");
        const Base& B = *T.src->base;
        const ECategory& A = *T.src;
        const ECategory& C = *T.dst;
        const int na = A.size(), nb = C.size();
        expect(static_cast<int>(f.comps.size()) == na * nb, "module cell has the wrong number of components");
        for (int u = 0; u < nb; ++u)
            for (int x = 0; x < na; ++x)
                expect(boundary(B, f.at(u, x), T.at(u, x), S.at(u, x)),
                       "module cell component " + tuple2(A, C, {x}, {u}) + " has the wrong boundary");
        for (int u = 0; u < nb; ++u)
            for (int x = 0; x < na; ++x)
                for (int y = 0; y < na; ++y) {
                    std::vector<Hom1> l{T.at(u, x), A.hom(x, y)};
                    Chain p(B, l, A.ext[y]), q(B, l, A.ext[y]);
                    p.apply(0, 1, f.at(u, x), {S.at(u, x)}).apply(0, 2, S.ract(x, y, u), {S.at(u, y)});
                    q.apply(0, 2, T.ract(x, y, u), {T.at(u, y)}).apply(0, 1, f.at(u, y), {S.at(u, y)});
                    if (!B.eq2(p.cell(), q.cell())) return Check::fail("right equivariance", tuple2(A, C, {x, y}, {u}));
                }
        for (int u = 0; u < nb; ++u)
            for (int v = 0; v < nb; ++v)
                for (int x = 0; x < na; ++x) {
                    std::vector<Hom1> l{C.hom(u, v), T.at(v, x)};
                    Chain p(B, l, A.ext[x]), q(B, l, A.ext[x]);
                    p.apply(1, 1, f.at(v, x), {S.at(v, x)}).apply(0, 2, S.lact(x, u, v), {S.at(u, x)});
                    q.apply(0, 2, T.lact(x, u, v), {T.at(u, x)}).apply(0, 1, f.at(u, x), {S.at(u, x)});
                    if (!B.eq2(p.cell(), q.cell())) return Check::fail("left equivariance", tuple2(A, C, {x}, {u, v}));
                }
        return Check::pass();
    });
}

Check validate(const EFunctor& D) {
    return guarded([&]() -> Check {
        check_functor_structure(D);
        const Base& B = *D.src->base;
        const ECategory& A = *D.src;
        const ECategory& C = *D.dst;
        const int n = A.size();
        for (int x = 0; x < n; ++x) {
            int dx = D.obj[x];
            Chain p(B, {D.cell(x)}, A.ext[x]), q(B, {D.cell(x)}, A.ext[x]);
            p.apply(1, 0, A.j(x), {A.hom(x, x)}).apply(0, 2, D.square(x, x), {C.hom(dx, dx), D.cell(x)});
            q.apply(0, 0, C.j(dx), {C.hom(dx, dx)});
            if (!B.eq2(p.cell(), q.cell())) return Check::fail("functor unit", tuple(A, {x}));
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    int dx = D.obj[x], dy = D.obj[y], dz = D.obj[z];
                    std::vector<Hom1> l{D.cell(x), A.hom(x, y), A.hom(y, z)};
                    Chain p(B, l, A.ext[z]), q(B, l, A.ext[z]);
                    p.apply(1, 2, A.m(x, y, z), {A.hom(x, z)}).apply(0, 2, D.square(x, z), {C.hom(dx, dz), D.cell(z)});
                    q.apply(0, 2, D.square(x, y), {C.hom(dx, dy), D.cell(y)})
                        .apply(1, 2, D.square(y, z), {C.hom(dy, dz), D.cell(z)})
                        .apply(0, 2, C.m(dx, dy, dz), {C.hom(dx, dz)});
                    if (!B.eq2(p.cell(), q.cell())) return Check::fail("functor composition", tuple(A, {x, y, z}));
                }
        return Check::pass();
    });
}

Check validate(const ETransformation& t) {
    return guarded([&]() -> Check {
        check_functor_structure(t.src);
        check_functor_structure(t.dst);
        const EFunctor& D = t.src;
        const EFunctor& E = t.dst;
        expect(same_functor_boundary(D, E), "transformation between functors with different boundaries");
        const Base& B = *D.src->base;
        const ECategory& A = *D.src;
        const ECategory& C = *D.dst;
        const int n = A.size();
        expect(static_cast<int>(t.comps.size()) == n, "transformation has the wrong number of components");
        for (int x = 0; x < n; ++x)
            expect(boundary(B, t.comps[x], D.cell(x), B.compose1(C.hom(D.obj[x], E.obj[x]), E.cell(x))),
                   "component at " + A.names[x] + " has the wrong boundary");
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int dx = D.obj[x], dy = D.obj[y], ex = E.obj[x], ey = E.obj[y];
                std::vector<Hom1> l{D.cell(x), A.hom(x, y)};
                Chain p(B, l, A.ext[y]), q(B, l, A.ext[y]);
                p.apply(0, 1, t.comps[x], {C.hom(dx, ex), E.cell(x)})
                    .apply(1, 2, E.square(x, y), {C.hom(ex, ey), E.cell(y)})
                    .apply(0, 2, C.m(dx, ex, ey), {C.hom(dx, ey)});
                q.apply(0, 2, D.square(x, y), {C.hom(dx, dy), D.cell(y)})
                    .apply(1, 1, t.comps[y], {C.hom(dy, ey), E.cell(y)})
                    .apply(0, 2, C.m(dx, dy, ey), {C.hom(dx, ey)});
                if (!B.eq2(p.cell(), q.cell())) return Check::fail("naturality", tuple(A, {x, y}));
            }
        return Check::pass();
    });
}

Check validate(const EIcon& g) {
    return guarded([&]() -> Check {
        check_functor_structure(g.src);
        check_functor_structure(g.dst);
        const EFunctor& D = g.src;
        const EFunctor& E = g.dst;
        expect(same_functor_boundary(D, E), "icon between functors with different boundaries");
        expect(D.obj == E.obj, "icon between functors that differ on objects");
        const Base& B = *D.src->base;
        const ECategory& A = *D.src;
        const ECategory& C = *D.dst;
        const int n = A.size();
        expect(static_cast<int>(g.comps.size()) == n, "icon has the wrong number of components");
        for (int x = 0; x < n; ++x)
            expect(boundary(B, g.comps[x], D.cell(x), E.cell(x)), "icon component at " + A.names[x] + " has the wrong boundary");
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int dx = D.obj[x], dy = D.obj[y];
                std::vector<Hom1> l{D.cell(x), A.hom(x, y)};
                Chain p(B, l, A.ext[y]), q(B, l, A.ext[y]);
                p.apply(0, 1, g.comps[x], {E.cell(x)}).apply(0, 2, E.square(x, y), {C.hom(dx, dy), E.cell(y)});
                q.apply(0, 2, D.square(x, y), {C.hom(dx, dy), D.cell(y)}).apply(1, 1, g.comps[y], {E.cell(y)});
                if (!B.eq2(p.cell(), q.cell())) return Check::fail("icon", tuple(A, {x, y}));
            }
        return Check::pass();
    });
}

bool same_ecat(const ECategory& A, const ECategory& C) {
    if (A.size() != C.size() || A.names != C.names) return false;
    const Base& B = *A.base;
    for (int x = 0; x < A.size(); ++x) {
        if (A.ext[x] != C.ext[x] || !B.eq2(A.j(x), C.j(x))) return false;
        for (int y = 0; y < A.size(); ++y) {
            if (!B.eq1(A.hom(x, y), C.hom(x, y))) return false;
            for (int z = 0; z < A.size(); ++z)
                if (!B.eq2(A.m(x, y, z), C.m(x, y, z))) return false;
        }
    }
    return true;
}

bool same_module(const EModule& T, const EModule& S) {
    if (T.src != S.src && !same_ecat(*T.src, *S.src)) return false;
    if (T.dst != S.dst && !same_ecat(*T.dst, *S.dst)) return false;
    const Base& B = *T.src->base;
    for (std::size_t i = 0; i < T.comps.size(); ++i)
        if (!B.eq1(T.comps[i], S.comps[i])) return false;
    for (std::size_t i = 0; i < T.racts.size(); ++i)
        if (!B.eq2(T.racts[i], S.racts[i])) return false;
    for (std::size_t i = 0; i < T.lacts.size(); ++i)
        if (!B.eq2(T.lacts[i], S.lacts[i])) return false;
    return true;
}

bool eq_modcell(const ModCell& f, const ModCell& g) {
    if (f.comps.size() != g.comps.size()) return false;
    const Base& B = *f.src.src->base;
    for (std::size_t i = 0; i < f.comps.size(); ++i)
        if (!B.eq2(f.comps[i], g.comps[i])) return false;
    return true;
}

bool eq_trans(const ETransformation& a, const ETransformation& b) {
    if (a.comps.size() != b.comps.size()) return false;
    const Base& B = *a.src.src->base;
    for (std::size_t i = 0; i < a.comps.size(); ++i)
        if (!B.eq2(a.comps[i], b.comps[i])) return false;
    return true;
}

ECatPtr hat_cat(BasePtr B, const Obj& v) {
    auto A = std::make_shared<ECategory>();
    A->base = B;
    A->names = {"*"};
    A->ext = {v};
    Hom1 id = B->id1(v);
    A->homs = {id};
    A->comps = {B->lunit(id)};
    A->units = {B->id2(id)};
    return A;
}

EFunctor hat_mor(BasePtr B, const Hom1& f) {
    if (!B->is_tight(f)) throw StructuralError("hat of a loose 1-cell is not a functor: " + B->show1(f));
    EFunctor D;
    D.src = hat_cat(B, f.src);
    D.dst = hat_cat(B, f.dst);
    D.obj = {0};
    D.cells = {f};
    D.sq = {B->vcomp(B->lunit_inv(f), B->runit(f))};
    return D;
}

EModule hat_loose(BasePtr B, const Hom1& f) {
    EModule T = EModule::shape(hat_cat(B, f.src), hat_cat(B, f.dst));
    T.comps[0] = f;
    T.racts[0] = B->runit(f);
    T.lacts[0] = B->lunit(f);
    return T;
}

ModCell hat_2cell(BasePtr B, const Hom2& a) {
    ModCell c;
    c.src = hat_loose(B, a.s);
    c.dst = hat_loose(B, a.t);
    c.dst.src = c.src.src;
    c.dst.dst = c.src.dst;
    c.comps = {a};
    return c;
}

ECatPtr discrete_cat(BasePtr B, const std::vector<Obj>& ext, std::vector<std::string> names) {
    const int n = static_cast<int>(ext.size());
    if (names.empty())
        for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    if (static_cast<int>(names.size()) != n) throw StructuralError("discrete_cat: names and extents differ in length");
    if (B->arity() == ArityClass::SINGLETON && n != 1) throw StructuralError("arity {1} allows exactly one object");
    auto A = std::make_shared<ECategory>();
    A->base = B;
    A->names = std::move(names);
    A->ext = ext;
    A->homs.resize(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) A->homs[x * n + y] = x == y ? B->id1(ext[x]) : B->initial(ext[y], ext[x]);
    A->comps.resize(n * n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                Hom1 s = B->compose1(A->hom(x, y), A->hom(y, z));
                if (x == y && y == z)
                    A->comps[(x * n + y) * n + z] = B->lunit(A->hom(x, x));
                else
                    A->comps[(x * n + y) * n + z] = B->from_initial(s, A->hom(x, z));
            }
    for (int x = 0; x < n; ++x) A->units.push_back(B->id2(A->hom(x, x)));
    return A;
}

ECatPtr fincat_to_ecat(const FinCategory& K, BasePtr spans) {
    if (!dynamic_cast<const SpanBase*>(spans.get())) throw StructuralError("internal categories need the span base");
    const Base& B = *spans;
    auto A = std::make_shared<ECategory>();
    A->base = spans;
    A->names = {K.name.empty() ? "*" : K.name};
    Obj ob = set_obj(K.nobj);
    A->ext = {ob};
    Hom1 hom = SpanBase::make(K.nobj, K.nobj, K.cod, K.dom);
    A->homs = {hom};
    Hom1 hh = B.compose1(hom, hom);
    // pairs (i, k) with dom(i) == cod(k), sent to i.k
    const auto& d = SpanBase::data(hh);
    std::vector<int> m;
    for (int i = 0; i < K.nmor(); ++i)
        for (int k = 0; k < K.nmor(); ++k)
            if (K.dom[i] == K.cod[k]) m.push_back(K.compose(i, k));
    if (static_cast<int>(m.size()) != d.apex) throw InternalError("fincat_to_ecat: pullback size mismatch");
    A->comps = {SpanBase::map(hh, hom, m)};
    A->units = {SpanBase::map(B.id1(ob), hom, K.ident)};
    return A;
}

FinCategory ecat_to_fincat(const ECategory& A) {
    if (A.size() != 1) throw StructuralError("only one-object span categories are internal categories");
    if (!dynamic_cast<const SpanBase*>(A.base.get())) throw StructuralError("internal categories need the span base");
    const auto& h = SpanBase::data(A.hom(0, 0));
    FinCategory K;
    K.name = A.names[0] == "*" ? std::string() : A.names[0];
    K.nobj = set_size(A.ext[0]);
    K.cod = h.left;
    K.dom = h.right;
    K.ident = SpanBase::fn(A.j(0));
    const int n = h.apex;
    K.table.assign(n * n, -1);
    const auto& mm = SpanBase::fn(A.m(0, 0, 0));
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (K.dom[i] == K.cod[k]) K.table[i * n + k] = mm[p++];
    try {
        K.check();
    } catch (const std::invalid_argument& e) {
        throw StructuralError(std::string("not an internal category: ") + e.what());
    }
    return K;
}

EFunctor efun_id(const ECatPtr& A) {
    const Base& B = *A->base;
    EFunctor D;
    D.src = A;
    D.dst = A;
    const int n = A->size();
    for (int x = 0; x < n; ++x) {
        D.obj.push_back(x);
        D.cells.push_back(B.id1(A->ext[x]));
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Hom1& h = A->hom(x, y);
            D.sq.push_back(B.vcomp(B.runit_inv(h), B.lunit(h)));
        }
    return D;
}

EFunctor efun_compose(const EFunctor& E, const EFunctor& D) {
    if (D.dst != E.src) throw StructuralError("efun_compose: functors are not composable");
    const Base& B = *D.src->base;
    const ECategory& A = *D.src;
    const ECategory& C = *E.dst;
    const ECategory& M = *D.dst;
    EFunctor R;
    R.src = D.src;
    R.dst = E.dst;
    const int n = A.size();
    for (int x = 0; x < n; ++x) {
        R.obj.push_back(E.obj[D.obj[x]]);
        R.cells.push_back(B.compose1(E.cell(D.obj[x]), D.cell(x)));
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int dx = D.obj[x], dy = D.obj[y];
            const Hom1& ex = E.cell(dx);
            const Hom1& ey = E.cell(dy);
            auto start = Tree::node(Tree::node(Tree::of(ex), Tree::of(D.cell(x))), Tree::of(A.hom(x, y)));
            Chain c(B, start);
            c.apply(1, 2, D.square(x, y), {M.hom(dx, dy), D.cell(y)})
                .apply(0, 2, E.square(dx, dy), {C.hom(E.obj[dx], E.obj[dy]), ey});
            auto target = Tree::node(Tree::of(C.hom(E.obj[dx], E.obj[dy])), Tree::node(Tree::of(ey), Tree::of(D.cell(y))));
            R.sq.push_back(c.finish(target));
        }
    return R;
}

EIcon efun_assoc_icon(const EFunctor& E, const EFunctor& D, const EFunctor& C) {
    const Base& B = *C.src->base;
    EIcon g;
    g.src = efun_compose(efun_compose(E, D), C);
    g.dst = efun_compose(E, efun_compose(D, C));
    for (int x = 0; x < C.src->size(); ++x) {
        int cx = C.obj[x];
        g.comps.push_back(B.assoc(E.cell(D.obj[cx]), D.cell(cx), C.cell(x)));
    }
    return g;
}

EIcon efun_lunit_icon(const EFunctor& D) {
    const Base& B = *D.src->base;
    EIcon g;
    g.src = efun_compose(efun_id(D.dst), D);
    g.dst = D;
    for (int x = 0; x < D.src->size(); ++x) g.comps.push_back(B.lunit(D.cell(x)));
    return g;
}

EIcon efun_runit_icon(const EFunctor& D) {
    const Base& B = *D.src->base;
    EIcon g;
    g.src = efun_compose(D, efun_id(D.src));
    g.dst = D;
    for (int x = 0; x < D.src->size(); ++x) g.comps.push_back(B.runit(D.cell(x)));
    return g;
}

EIcon icon_id(const EFunctor& D) {
    const Base& B = *D.src->base;
    EIcon g;
    g.src = D;
    g.dst = D;
    for (const auto& c : D.cells) g.comps.push_back(B.id2(c));
    return g;
}

ETransformation icon_to_trans(const EIcon& g) {
    const Base& B = *g.src.src->base;
    const ECategory& C = *g.src.dst;
    ETransformation t;
    t.src = g.src;
    t.dst = g.dst;
    for (int x = 0; x < g.src.src->size(); ++x) {
        int ex = g.dst.obj[x];
        Chain c(B, {g.src.cell(x)}, g.src.src->ext[x]);
        c.apply(0, 1, g.comps[x], {g.dst.cell(x)}).apply(0, 0, C.j(ex), {C.hom(ex, ex)});
        t.comps.push_back(c.cell());
    }
    return t;
}

ETransformation etrans_id(const EFunctor& D) { return icon_to_trans(icon_id(D)); }

ETransformation etrans_vcompose(const ETransformation& s, const ETransformation& t) {
    const EFunctor& D = t.src;
    const EFunctor& E = t.dst;
    const EFunctor& F = s.dst;
    if (D.src != F.src || D.dst != F.dst) throw StructuralError("etrans_vcompose: boundaries differ");
    const Base& B = *D.src->base;
    const ECategory& C = *D.dst;
    ETransformation r;
    r.src = D;
    r.dst = F;
    for (int x = 0; x < D.src->size(); ++x) {
        int dx = D.obj[x], ex = E.obj[x], fx = F.obj[x];
        Chain c(B, {D.cell(x)}, D.src->ext[x]);
        c.apply(0, 1, t.comps[x], {C.hom(dx, ex), E.cell(x)})
            .apply(1, 1, s.comps[x], {C.hom(ex, fx), F.cell(x)})
            .apply(0, 2, C.m(dx, ex, fx), {C.hom(dx, fx)});
        r.comps.push_back(c.cell());
    }
    return r;
}

ETransformation etrans_whisker_left(const EFunctor& G, const ETransformation& t) {
    const EFunctor& D = t.src;
    const EFunctor& E = t.dst;
    if (G.src != D.dst) throw StructuralError("etrans_whisker_left: boundaries differ");
    const Base& B = *D.src->base;
    const ECategory& C = *G.dst;
    ETransformation r;
    r.src = efun_compose(G, D);
    r.dst = efun_compose(G, E);
    for (int x = 0; x < D.src->size(); ++x) {
        int dx = D.obj[x], ex = E.obj[x];
        Chain c(B, {G.cell(dx), D.cell(x)}, D.src->ext[x]);
        c.apply(1, 1, t.comps[x], {D.dst->hom(dx, ex), E.cell(x)})
            .apply(0, 2, G.square(dx, ex), {C.hom(G.obj[dx], G.obj[ex]), G.cell(ex)});
        r.comps.push_back(c.cell());
    }
    return r;
}

ETransformation etrans_whisker_right(const ETransformation& t, const EFunctor& H) {
    const EFunctor& D = t.src;
    const EFunctor& E = t.dst;
    if (H.dst != D.src) throw StructuralError("etrans_whisker_right: boundaries differ");
    const Base& B = *D.src->base;
    const ECategory& C = *D.dst;
    ETransformation r;
    r.src = efun_compose(D, H);
    r.dst = efun_compose(E, H);
    for (int z = 0; z < H.src->size(); ++z) {
        int hz = H.obj[z];
        Chain c(B, {D.cell(hz), H.cell(z)}, H.src->ext[z]);
        c.apply(0, 1, t.comps[hz], {C.hom(D.obj[hz], E.obj[hz]), E.cell(hz)});
        r.comps.push_back(c.cell());
    }
    return r;
}

ETransformation etrans_hcompose(const ETransformation& s, const ETransformation& t) {
    // (s E) . (G t) : G D => G E => H E
    return etrans_vcompose(etrans_whisker_right(s, t.dst), etrans_whisker_left(s.src, t));
}

}  // namespace ck
