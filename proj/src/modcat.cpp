#include "collagekit/modcat.hpp"

#include <climits>
#include <functional>
#include <sstream>

#include "collagekit/coherence.hpp"
#include "collagekit/span.hpp"

namespace ck {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::YES: return "YES";
    case Verdict::NO: return "NO";
    case Verdict::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

namespace {

const Base& base_of(const EModule& T) { return *T.src->base; }

Hom2 must(std::optional<Hom2> h, const std::string& what) {
    if (!h) throw InternalError("no factorization: " + what);
    return *h;
}

ModCell blank(const EModule& s, const EModule& t) {
    ModCell c;
    c.src = s;
    c.dst = t;
    c.comps.resize(s.comps.size());
    return c;
}

void same_boundary_or_throw(const EModule& T, const EModule& S, const char* what) {
    if (T.src != S.src || T.dst != S.dst) throw StructuralError(std::string(what) + ": modules have different boundaries");
}

// Both actions of the composite, induced through the cocones.
void induce_actions(ModComposite& R) {
    const EModule& T = R.T;
    const EModule& S = R.S;
    EModule& C = R.composite;
    const Base& B = base_of(S);
    const ECategory& A = *S.src;
    const ECategory& M = *S.dst;
    const ECategory& Z = *T.dst;
    const int na = A.size(), nm = M.size(), nz = Z.size();
    for (int w = 0; w < na; ++w)
        for (int w2 = 0; w2 < na; ++w2)
            for (int u = 0; u < nz; ++u) {
                std::vector<Hom2> epis, maps;
                for (int x = 0; x < nm; ++x) {
                    epis.push_back(B.whisker_right(R.cocone(u, w, x), A.hom(w, w2)));
                    Hom2 a = B.assoc(T.at(u, x), S.at(x, w), A.hom(w, w2));
                    Hom2 b = B.whisker_left(T.at(u, x), S.ract(w, w2, x));
                    maps.push_back(B.vcomp(R.cocone(u, w2, x), B.vcomp(b, a)));
                }
                Hom1 src = B.compose1(C.at(u, w), A.hom(w, w2));
                C.racts[(w * na + w2) * nz + u] = must(B.factor(src, C.at(u, w2), epis, maps), "composite right action");
            }
    for (int w = 0; w < na; ++w)
        for (int u = 0; u < nz; ++u)
            for (int v = 0; v < nz; ++v) {
                std::vector<Hom2> epis, maps;
                for (int x = 0; x < nm; ++x) {
                    epis.push_back(B.whisker_left(Z.hom(u, v), R.cocone(v, w, x)));
                    Hom2 a = B.assoc_inv(Z.hom(u, v), T.at(v, x), S.at(x, w));
                    Hom2 b = B.whisker_right(T.lact(x, u, v), S.at(x, w));
                    maps.push_back(B.vcomp(R.cocone(u, w, x), B.vcomp(b, a)));
                }
                Hom1 src = B.compose1(Z.hom(u, v), C.at(v, w));
                C.lacts[(w * nz + u) * nz + v] = must(B.factor(src, C.at(u, w), epis, maps), "composite left action");
            }
}

// (UT)S => U(TS) or its inverse, from the four composite witnesses.
ModCell associator_from(const ModComposite& UT, const ModComposite& TS, const ModComposite& L, const ModComposite& R,
                        bool forward) {
    const EModule& U = UT.T;
    const EModule& T = UT.S;
    const EModule& S = TS.S;
    const Base& B = base_of(S);
    const int na = S.na(), nb = S.nb(), nc = T.nb(), nd = U.nb();
    ModCell c = forward ? blank(L.composite, R.composite) : blank(R.composite, L.composite);
    for (int d = 0; d < nd; ++d)
        for (int a = 0; a < na; ++a) {
            std::vector<Hom2> lhs, rhs;
            for (int b = 0; b < nb; ++b)
                for (int cc = 0; cc < nc; ++cc) {
                    Hom2 l = B.vcomp(L.cocone(d, a, b), B.whisker_right(UT.cocone(d, b, cc), S.at(b, a)));
                    Hom2 r = B.vcomp(R.cocone(d, a, cc), B.whisker_left(U.at(d, cc), TS.cocone(cc, a, b)));
                    if (forward) {
                        lhs.push_back(l);
                        rhs.push_back(B.vcomp(r, B.assoc(U.at(d, cc), T.at(cc, b), S.at(b, a))));
                    } else {
                        lhs.push_back(r);
                        rhs.push_back(B.vcomp(l, B.assoc_inv(U.at(d, cc), T.at(cc, b), S.at(b, a))));
                    }
                }
            c.comps[d * na + a] = must(B.factor(c.src.at(d, a), c.dst.at(d, a), lhs, rhs), "associator");
        }
    return c;
}

// 1.T => T (left) or T.1 => T, and inverses.
ModCell unitor_from(const ModComposite& W, bool left, bool forward) {
    const EModule& T = left ? W.S : W.T;
    const Base& B = base_of(T);
    const ECategory& A = *T.src;
    const ECategory& Z = *T.dst;
    const int na = A.size(), nz = Z.size();
    ModCell c = forward ? blank(W.composite, T) : blank(T, W.composite);
    for (int u = 0; u < nz; ++u)
        for (int x = 0; x < na; ++x) {
            const Hom1& t = T.at(u, x);
            if (forward) {
                std::vector<Hom2> maps;
                if (left)
                    for (int v = 0; v < nz; ++v) maps.push_back(T.lact(x, u, v));
                else
                    for (int y = 0; y < na; ++y) maps.push_back(T.ract(y, x, u));
                c.comps[u * na + x] = must(B.factor(W.composite.at(u, x), t, W.family(u, x), maps), "unitor");
            } else if (left) {
                c.comps[u * na + x] =
                    B.vcomp(W.cocone(u, x, u), B.vcomp(B.whisker_right(Z.j(u), t), B.lunit_inv(t)));
            } else {
                c.comps[u * na + x] =
                    B.vcomp(W.cocone(u, x, x), B.vcomp(B.whisker_left(t, A.j(x)), B.runit_inv(t)));
            }
        }
    return c;
}

TreePtr leaf(const Hom1& f) { return Tree::of(f); }
TreePtr node(TreePtr l, TreePtr r) { return Tree::node(std::move(l), std::move(r)); }

std::vector<Adjoint> cell_adjoints(const EFunctor& D) {
    const Base& B = *D.src->base;
    std::vector<Adjoint> out;
    for (const auto& c : D.cells) {
        auto a = B.right_adjoint(c);
        if (!a) throw StructuralError("functor cell has no right adjoint: " + B.show1(c));
        out.push_back(*a);
    }
    return out;
}

EModule corepresentable_with(const EFunctor& D, const std::vector<Adjoint>& adj) {
    const Base& B = *D.src->base;
    const ECategory& A = *D.src;
    const ECategory& M = *D.dst;
    EModule K = EModule::shape(D.dst, D.src);
    const int na = A.size(), nm = M.size();
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nm; ++u) K.comps[x * nm + u] = B.compose1(adj[x].right, M.hom(D.obj[x], u));
    for (int u = 0; u < nm; ++u)
        for (int u2 = 0; u2 < nm; ++u2)
            for (int x = 0; x < na; ++x) {
                int dx = D.obj[x];
                Chain c(B, node(node(leaf(adj[x].right), leaf(M.hom(dx, u))), leaf(M.hom(u, u2))));
                c.apply(1, 2, M.m(dx, u, u2), {M.hom(dx, u2)});
                K.racts[(u * nm + u2) * na + x] = c.finish(node(leaf(adj[x].right), leaf(M.hom(dx, u2))));
            }
    for (int u = 0; u < nm; ++u)
        for (int x = 0; x < na; ++x)
            for (int x2 = 0; x2 < na; ++x2) {
                int dx = D.obj[x], dx2 = D.obj[x2];
                Chain c(B, node(leaf(A.hom(x, x2)), node(leaf(adj[x2].right), leaf(M.hom(dx2, u)))));
                c.apply(0, 0, adj[x].unit, {adj[x].right, D.cell(x)})
                    .apply(1, 2, D.square(x, x2), {M.hom(dx, dx2), D.cell(x2)})
                    .apply(2, 2, adj[x2].counit, {})
                    .apply(1, 2, M.m(dx, dx2, u), {M.hom(dx, u)});
                K.lacts[(u * na + x) * na + x2] = c.finish(node(leaf(adj[x].right), leaf(M.hom(dx, u))));
            }
    return K;
}

}  // namespace

std::vector<Hom2> ModComposite::family(int u, int w) const {
    std::vector<Hom2> out;
    for (int x = 0; x < T.na(); ++x) out.push_back(cocone(u, w, x));
    return out;
}

ModComposite mod_compose(const EModule& T, const EModule& S) {
    if (S.dst != T.src) throw StructuralError("mod_compose: modules are not composable");
    const Base& B = base_of(S);
    const ECategory& A = *S.src;
    const ECategory& M = *S.dst;
    const ECategory& Z = *T.dst;
    const int na = A.size(), nm = M.size(), nz = Z.size();
    ModComposite R;
    R.T = T;
    R.S = S;
    R.composite = EModule::shape(S.src, T.dst);
    R.cocones.resize(nz * na * nm);
    for (int u = 0; u < nz; ++u)
        for (int w = 0; w < na; ++w) {
            const Obj& s = A.ext[w];
            const Obj& d = Z.ext[u];
            std::vector<Hom1> P;
            for (int x = 0; x < nm; ++x) P.push_back(B.compose1(T.at(u, x), S.at(x, w)));
            Coproduct sig = B.coproduct(P, s, d);
            std::vector<Hom1> Q;
            std::vector<Hom2> amaps, bmaps;
            for (int x = 0; x < nm; ++x)
                for (int y = 0; y < nm; ++y) {
                    Hom1 tb = B.compose1(T.at(u, x), M.hom(x, y));
                    Q.push_back(B.compose1(tb, S.at(y, w)));
                    amaps.push_back(B.vcomp(sig.inj[y], B.whisker_right(T.ract(x, y, u), S.at(y, w))));
                    Hom2 b = B.vcomp(B.whisker_left(T.at(u, x), S.lact(w, x, y)),
                                     B.assoc(T.at(u, x), M.hom(x, y), S.at(y, w)));
                    bmaps.push_back(B.vcomp(sig.inj[x], b));
                }
            Coproduct pi = B.coproduct(Q, s, d);
            Hom2 a = must(B.factor(pi.sum, sig.sum, pi.inj, amaps), "action copairing");
            Hom2 b = must(B.factor(pi.sum, sig.sum, pi.inj, bmaps), "action copairing");
            Coequalizer q = B.refl_coequalizer(a, b);
            R.composite.comps[u * na + w] = q.obj;
            for (int x = 0; x < nm; ++x) R.cocones[(u * na + w) * nm + x] = B.vcomp(q.cocone, sig.inj[x]);
        }
    induce_actions(R);
    return R;
}

EModule mod_id(const ECatPtr& A) {
    EModule T = EModule::shape(A, A);
    const int n = A->size();
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) T.comps[u * n + x] = A->hom(u, x);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int u = 0; u < n; ++u) T.racts[(x * n + y) * n + u] = A->m(u, x, y);
    for (int x = 0; x < n; ++x)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) T.lacts[(x * n + u) * n + v] = A->m(u, v, x);
    return T;
}

ModCell modcell_id(const EModule& T) {
    const Base& B = base_of(T);
    ModCell c = blank(T, T);
    for (std::size_t i = 0; i < T.comps.size(); ++i) c.comps[i] = B.id2(T.comps[i]);
    return c;
}

ModCell modcell_vcomp(const ModCell& g, const ModCell& f) {
    same_boundary_or_throw(f.dst, g.src, "modcell_vcomp");
    const Base& B = base_of(f.src);
    ModCell c = blank(f.src, g.dst);
    for (std::size_t i = 0; i < c.comps.size(); ++i) c.comps[i] = B.vcomp(g.comps[i], f.comps[i]);
    return c;
}

std::optional<ModCell> modcell_inverse(const ModCell& f) {
    const Base& B = base_of(f.src);
    ModCell c = blank(f.dst, f.src);
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        auto inv = B.inverse2(f.comps[i]);
        if (!inv) return std::nullopt;
        c.comps[i] = *inv;
    }
    return c;
}

ModCell modcell_hcomp(const ModCell& g, const ModCell& f, const ModComposite& src, const ModComposite& dst) {
    const Base& B = base_of(f.src);
    const int na = f.src.na(), nm = f.src.nb(), nz = g.src.nb();
    ModCell c = blank(src.composite, dst.composite);
    for (int u = 0; u < nz; ++u)
        for (int w = 0; w < na; ++w) {
            std::vector<Hom2> maps;
            for (int x = 0; x < nm; ++x) maps.push_back(B.vcomp(dst.cocone(u, w, x), B.hcomp(g.at(u, x), f.at(x, w))));
            c.comps[u * na + w] = must(B.factor(src.composite.at(u, w), dst.composite.at(u, w), src.family(u, w), maps),
                                       "horizontal composite");
        }
    return c;
}

std::pair<ModCell, ModCell> mod_associator(const EModule& U, const EModule& T, const EModule& S) {
    ModComposite UT = mod_compose(U, T), TS = mod_compose(T, S);
    ModComposite L = mod_compose(UT.composite, S), R = mod_compose(U, TS.composite);
    return {associator_from(UT, TS, L, R, true), associator_from(UT, TS, L, R, false)};
}

std::pair<ModCell, ModCell> mod_lunitor(const EModule& T) {
    ModComposite W = mod_compose(mod_id(T.dst), T);
    return {unitor_from(W, true, true), unitor_from(W, true, false)};
}

std::pair<ModCell, ModCell> mod_runitor(const EModule& T) {
    ModComposite W = mod_compose(T, mod_id(T.src));
    return {unitor_from(W, false, true), unitor_from(W, false, false)};
}

EModule representable(const EFunctor& D) {
    const Base& B = *D.src->base;
    const ECategory& A = *D.src;
    const ECategory& M = *D.dst;
    EModule R = EModule::shape(D.src, D.dst);
    const int na = A.size(), nm = M.size();
    for (int u = 0; u < nm; ++u)
        for (int x = 0; x < na; ++x) R.comps[u * na + x] = B.compose1(M.hom(u, D.obj[x]), D.cell(x));
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int u = 0; u < nm; ++u) {
                int dx = D.obj[x], dy = D.obj[y];
                Chain c(B, node(node(leaf(M.hom(u, dx)), leaf(D.cell(x))), leaf(A.hom(x, y))));
                c.apply(1, 2, D.square(x, y), {M.hom(dx, dy), D.cell(y)}).apply(0, 2, M.m(u, dx, dy), {M.hom(u, dy)});
                R.racts[(x * na + y) * nm + u] = c.finish(node(leaf(M.hom(u, dy)), leaf(D.cell(y))));
            }
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nm; ++u)
            for (int v = 0; v < nm; ++v) {
                int dx = D.obj[x];
                Chain c(B, node(leaf(M.hom(u, v)), node(leaf(M.hom(v, dx)), leaf(D.cell(x)))));
                c.apply(0, 2, M.m(u, v, dx), {M.hom(u, dx)});
                R.lacts[(x * nm + u) * nm + v] = c.finish(node(leaf(M.hom(u, dx)), leaf(D.cell(x))));
            }
    return R;
}

EModule corepresentable(const EFunctor& D) { return corepresentable_with(D, cell_adjoints(D)); }

AdjunctionWitness representable_adjunction(const EFunctor& D) {
    const Base& B = *D.src->base;
    const ECategory& A = *D.src;
    const ECategory& M = *D.dst;
    const int na = A.size(), nm = M.size();
    auto adj = cell_adjoints(D);
    AdjunctionWitness w;
    w.left = representable(D);
    w.right = corepresentable_with(D, adj);

    ModComposite RL = mod_compose(w.right, w.left);
    w.unit = blank(mod_id(D.src), RL.composite);
    for (int x2 = 0; x2 < na; ++x2)
        for (int x = 0; x < na; ++x) {
            int dx2 = D.obj[x2], dx = D.obj[x];
            Chain c(B, leaf(A.hom(x2, x)));
            c.apply(0, 0, adj[x2].unit, {adj[x2].right, D.cell(x2)})
                .apply(1, 2, D.square(x2, x), {M.hom(dx2, dx), D.cell(x)})
                .apply(2, 0, M.j(dx), {M.hom(dx, dx)});
            Hom2 a = c.finish(node(node(leaf(adj[x2].right), leaf(M.hom(dx2, dx))), node(leaf(M.hom(dx, dx)), leaf(D.cell(x)))));
            w.unit.comps[x2 * na + x] = B.vcomp(RL.cocone(x2, x, dx), a);
        }

    ModComposite LR = mod_compose(w.left, w.right);
    w.counit = blank(LR.composite, mod_id(D.dst));
    for (int u = 0; u < nm; ++u)
        for (int v = 0; v < nm; ++v) {
            std::vector<Hom2> maps;
            for (int x = 0; x < na; ++x) {
                int dx = D.obj[x];
                Chain c(B, node(node(leaf(M.hom(u, dx)), leaf(D.cell(x))), node(leaf(adj[x].right), leaf(M.hom(dx, v)))));
                c.apply(1, 2, adj[x].counit, {}).apply(0, 2, M.m(u, dx, v), {M.hom(u, v)});
                maps.push_back(c.finish(leaf(M.hom(u, v))));
            }
            w.counit.comps[u * nm + v] = must(B.factor(LR.composite.at(u, v), M.hom(u, v), LR.family(u, v), maps), "counit");
        }
    return w;
}

bool adjunction_check(const AdjunctionWitness& w) {
    if (!validate(w.unit).ok() || !validate(w.counit).ok()) return false;
    auto MB = std::make_shared<ModBase>(w.left.src->base, ArityClass::FINITE);
    Hom1 f = MB->wrap(w.left);
    Hom1 r = MB->wrap(w.right);
    Adjoint a;
    a.right = r;
    a.unit = MB->wrap(w.unit);
    a.counit = MB->wrap(w.counit);
    try {
        return adjoint_triangles(*MB, f, a);
    } catch (const StructuralError&) {
        return false;
    }
}

ModCell trans_to_modcell(const ETransformation& t) {
    const EFunctor& D = t.src;
    const EFunctor& E = t.dst;
    const Base& B = *D.src->base;
    const ECategory& M = *D.dst;
    const int na = D.src->size(), nm = M.size();
    ModCell c = blank(representable(D), representable(E));
    for (int u = 0; u < nm; ++u)
        for (int x = 0; x < na; ++x) {
            int dx = D.obj[x], ex = E.obj[x];
            Chain ch(B, node(leaf(M.hom(u, dx)), leaf(D.cell(x))));
            ch.apply(1, 1, t.comps[x], {M.hom(dx, ex), E.cell(x)}).apply(0, 2, M.m(u, dx, ex), {M.hom(u, ex)});
            c.comps[u * na + x] = ch.finish(node(leaf(M.hom(u, ex)), leaf(E.cell(x))));
        }
    return c;
}

ETransformation modcell_to_trans(const ModCell& f, const EFunctor& D, const EFunctor& E) {
    if (f.src.src != D.src || f.src.dst != D.dst || E.src != D.src || E.dst != D.dst)
        throw StructuralError("modcell_to_trans: boundaries do not match");
    const Base& B = *D.src->base;
    const ECategory& M = *D.dst;
    ETransformation t;
    t.src = D;
    t.dst = E;
    for (int x = 0; x < D.src->size(); ++x) {
        int dx = D.obj[x];
        Hom2 a = B.vcomp(B.whisker_right(M.j(dx), D.cell(x)), B.lunit_inv(D.cell(x)));
        t.comps.push_back(B.vcomp(f.at(dx, x), a));
    }
    return t;
}

std::pair<ModCell, ModCell> j_compose_witness(const EFunctor& E, const EFunctor& D) {
    const Base& B = *D.src->base;
    const ECategory& M = *D.dst;
    const ECategory& Z = *E.dst;
    const int na = D.src->size(), nm = M.size(), nz = Z.size();
    EFunctor ED = efun_compose(E, D);
    EModule rep = representable(ED);
    ModComposite W = mod_compose(representable(E), representable(D));
    ModCell fwd = blank(rep, W.composite), bwd = blank(W.composite, rep);
    for (int u = 0; u < nz; ++u)
        for (int x = 0; x < na; ++x) {
            int dx = D.obj[x], edx = E.obj[dx];
            const Hom1& ec = E.cell(dx);
            Chain c(B, node(leaf(Z.hom(u, edx)), node(leaf(ec), leaf(D.cell(x)))));
            c.apply(2, 0, M.j(dx), {M.hom(dx, dx)});
            Hom2 a = c.finish(node(node(leaf(Z.hom(u, edx)), leaf(ec)), node(leaf(M.hom(dx, dx)), leaf(D.cell(x)))));
            fwd.comps[u * na + x] = B.vcomp(W.cocone(u, x, dx), a);

            std::vector<Hom2> maps;
            for (int b = 0; b < nm; ++b) {
                int eb = E.obj[b];
                Chain d(B, node(node(leaf(Z.hom(u, eb)), leaf(E.cell(b))), node(leaf(M.hom(b, dx)), leaf(D.cell(x)))));
                d.apply(1, 2, E.square(b, dx), {Z.hom(eb, edx), ec}).apply(0, 2, Z.m(u, eb, edx), {Z.hom(u, edx)});
                maps.push_back(d.finish(node(leaf(Z.hom(u, edx)), node(leaf(ec), leaf(D.cell(x))))));
            }
            bwd.comps[u * na + x] = must(B.factor(W.composite.at(u, x), rep.at(u, x), W.family(u, x), maps), "j witness");
        }
    return {fwd, bwd};
}

Tightening find_tightening(const EModule& T, std::size_t limit) {
    const Base& B = base_of(T);
    const ECategory& A = *T.src;
    const ECategory& M = *T.dst;
    const int na = A.size(), nm = M.size();
    Tightening out;
    bool incomplete = false;
    std::vector<int> obj(na, -1);
    std::vector<Hom1> cells(na);
    std::vector<std::vector<Hom2>> induced(na);  // [x][u] : B(u,b).D_x => T(u,x)
    std::vector<Hom2> gens(na);
    for (int x = 0; x < na && out.verdict != Verdict::NO; ++x) {
        bool found = false;
        for (int b = 0; b < nm && !found; ++b) {
            auto tights = B.enumerate_tight(A.ext[x], M.ext[b], limit);
            if (!tights.complete) incomplete = true;
            for (const auto& dx : tights.items) {
                auto es = B.enumerate2(dx, T.at(b, x), limit);
                if (!es.complete) incomplete = true;
                for (const auto& e : es.items) {
                    std::vector<Hom2> ind;
                    bool ok = true;
                    for (int u = 0; u < nm && ok; ++u) {
                        Hom2 i = B.vcomp(T.lact(x, u, b), B.whisker_left(M.hom(u, b), e));
                        ok = B.is_iso2(i);
                        ind.push_back(i);
                    }
                    if (!ok) continue;
                    obj[x] = b;
                    cells[x] = dx;
                    induced[x] = ind;
                    gens[x] = e;
                    found = true;
                    break;
                }
                if (found) break;
            }
        }
        if (!found) {
            out.verdict = incomplete ? Verdict::UNKNOWN : Verdict::NO;
            out.note = "no representing object for " + A.names[x];
            if (incomplete) return out;
        }
    }
    if (out.verdict == Verdict::NO) return out;

    EFunctor D;
    D.src = T.src;
    D.dst = T.dst;
    D.obj = obj;
    D.cells = cells;
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y) {
            int bx = obj[x];
            Hom2 a = B.vcomp(T.ract(x, y, bx), B.whisker_right(gens[x], A.hom(x, y)));
            D.sq.push_back(B.vcomp(*B.inverse2(induced[y][bx]), a));
        }
    Check fc = validate(D);
    if (!fc.ok()) throw InternalError("tightening produced an invalid functor: " + fc.describe());
    ModCell iso = blank(representable(D), T);
    for (int u = 0; u < nm; ++u)
        for (int x = 0; x < na; ++x) iso.comps[u * na + x] = induced[x][u];
    Check ic = validate(iso);
    if (!ic.ok()) throw InternalError("tightening produced an invalid module cell: " + ic.describe());
    out.verdict = Verdict::YES;
    out.functor = D;
    out.iso = iso;
    return out;
}

namespace {

// Element-level search for span-valued modules: a bijection per component,
// preserving legs and propagated along both actions.
struct SpanIso {
    struct Op {
        int from, to;
        std::vector<int> tmap, smap;
    };
    std::vector<int> nT;
    std::vector<std::vector<int>> tl, tr, sl, sr;
    std::vector<Op> ops;
    std::vector<std::vector<int>> out_ops;  // per component
    std::size_t budget = 200000;
    bool gave_up = false;

    struct State {
        std::vector<std::vector<int>> phi, used;
    };

    bool assign(State& st, int c, int k, int k2) {
        std::vector<std::pair<int, int>> queue{{c, k}};
        if (st.phi[c][k] >= 0) return st.phi[c][k] == k2;
        if (st.used[c][k2] >= 0 || tl[c][k] != sl[c][k2] || tr[c][k] != sr[c][k2]) return false;
        st.phi[c][k] = k2;
        st.used[c][k2] = k;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            auto [cc, kk] = queue[q];
            for (int oi : out_ops[cc]) {
                const Op& op = ops[oi];
                int t = op.tmap[kk], s = op.smap[st.phi[cc][kk]];
                if ((t < 0) != (s < 0)) return false;
                if (t < 0) continue;
                int& cur = st.phi[op.to][t];
                if (cur >= 0) {
                    if (cur != s) return false;
                    continue;
                }
                if (st.used[op.to][s] >= 0 || tl[op.to][t] != sl[op.to][s] || tr[op.to][t] != sr[op.to][s]) return false;
                cur = s;
                st.used[op.to][s] = t;
                queue.push_back({op.to, t});
            }
        }
        return true;
    }

    bool search(State& st, std::vector<State>& found) {
        if (budget-- == 0) {
            gave_up = true;
            return false;
        }
        for (std::size_t c = 0; c < st.phi.size(); ++c)
            for (std::size_t k = 0; k < st.phi[c].size(); ++k) {
                if (st.phi[c][k] >= 0) continue;
                for (int k2 = 0; k2 < nT[c]; ++k2) {
                    if (st.used[c][k2] >= 0) continue;
                    State next = st;
                    if (!assign(next, static_cast<int>(c), static_cast<int>(k), k2)) continue;
                    if (search(next, found)) return true;
                    if (gave_up) return false;
                }
                return false;
            }
        found.push_back(st);
        return true;
    }
};

// For each pair (i in f, k in g) with f.right[i] == g.left[k], in the order
// used by span composition.
std::vector<std::vector<int>> pair_index(const SpanData& f, const SpanData& g) {
    std::vector<std::vector<int>> idx(f.apex, std::vector<int>(g.apex, -1));
    int p = 0;
    for (int i = 0; i < f.apex; ++i)
        for (int k = 0; k < g.apex; ++k)
            if (f.right[i] == g.left[k]) idx[i][k] = p++;
    return idx;
}

IsoSearch span_module_iso(const EModule& T, const EModule& S, int cap) {
    IsoSearch res;
    const ECategory& A = *T.src;
    const ECategory& M = *T.dst;
    const int na = A.size(), nm = M.size(), nc = na * nm;
    SpanIso si;
    for (int c = 0; c < nc; ++c) {
        const auto& t = SpanBase::data(T.comps[c]);
        const auto& s = SpanBase::data(S.comps[c]);
        if (t.apex != s.apex) return res;
        if (t.apex > cap) {
            res.exhausted = false;
            return res;
        }
        si.nT.push_back(t.apex);
        si.tl.push_back(t.left);
        si.tr.push_back(t.right);
        si.sl.push_back(s.left);
        si.sr.push_back(s.right);
    }
    si.out_ops.resize(nc);
    auto add = [&](int from, int to, const Hom2& ta, const Hom2& sa, const SpanData* act, bool act_first) {
        // act_first: pairs (a, k) with a the acting element; else (k, a).
        const auto& tf = SpanBase::fn(ta);
        const auto& sf = SpanBase::fn(sa);
        const auto& tc = SpanBase::data(T.comps[from]);
        const auto& sc = SpanBase::data(S.comps[from]);
        auto ti = act_first ? pair_index(*act, tc) : pair_index(tc, *act);
        auto sidx = act_first ? pair_index(*act, sc) : pair_index(sc, *act);
        for (int a = 0; a < act->apex; ++a) {
            SpanIso::Op op;
            op.from = from;
            op.to = to;
            op.tmap.assign(tc.apex, -1);
            op.smap.assign(sc.apex, -1);
            for (int k = 0; k < tc.apex; ++k) {
                int p = act_first ? ti[a][k] : ti[k][a];
                if (p >= 0) op.tmap[k] = tf[p];
            }
            for (int k = 0; k < sc.apex; ++k) {
                int p = act_first ? sidx[a][k] : sidx[k][a];
                if (p >= 0) op.smap[k] = sf[p];
            }
            si.out_ops[from].push_back(static_cast<int>(si.ops.size()));
            si.ops.push_back(std::move(op));
        }
    };
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int u = 0; u < nm; ++u)
                add(u * na + x, u * na + y, T.ract(x, y, u), S.ract(x, y, u), &SpanBase::data(A.hom(x, y)), true);
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nm; ++u)
            for (int v = 0; v < nm; ++v)
                add(v * na + x, u * na + x, T.lact(x, u, v), S.lact(x, u, v), &SpanBase::data(M.hom(u, v)), false);

    SpanIso::State st;
    for (int c = 0; c < nc; ++c) {
        st.phi.emplace_back(si.nT[c], -1);
        st.used.emplace_back(si.nT[c], -1);
    }
    std::vector<SpanIso::State> found;
    si.search(st, found);
    if (si.gave_up) res.exhausted = false;
    if (found.empty()) return res;
    ModCell f = blank(T, S), g = blank(S, T);
    for (int c = 0; c < nc; ++c) {
        f.comps[c] = SpanBase::map(T.comps[c], S.comps[c], found[0].phi[c]);
        g.comps[c] = SpanBase::map(S.comps[c], T.comps[c], found[0].used[c]);
    }
    if (!validate(f).ok() || !validate(g).ok()) throw InternalError("module iso search produced a non-equivariant map");
    res.iso = std::make_pair(f, g);
    return res;
}

}  // namespace

IsoSearch module_iso(const EModule& T, const EModule& S, int cap) {
    same_boundary_or_throw(T, S, "module_iso");
    const Base& B = base_of(T);
    if (B.kind() == BaseKind::SPAN_FINSET) return span_module_iso(T, S, cap);
    IsoSearch res;
    ModCell f = blank(T, S), g = blank(S, T);
    for (std::size_t c = 0; c < T.comps.size(); ++c) {
        auto p = B.iso1(T.comps[c], S.comps[c]);
        if (!p) {
            res.exhausted = B.kind() != BaseKind::MOD_DERIVED;
            return res;
        }
        f.comps[c] = p->first;
        g.comps[c] = p->second;
    }
    if (validate(f).ok() && validate(g).ok()) {
        res.iso = std::make_pair(f, g);
        return res;
    }
    // Quantaloid cells are unique, so a failing check is final.
    res.exhausted = B.kind() != BaseKind::MOD_DERIVED;
    return res;
}

bool check_pseudo_inverse(const EModule& T, const EModule& S, int cap) {
    if (S.src != T.dst || S.dst != T.src) return false;
    auto a = module_iso(mod_compose(S, T).composite, mod_id(T.src), cap);
    if (!a.iso) return false;
    auto b = module_iso(mod_compose(T, S).composite, mod_id(T.dst), cap);
    return b.iso.has_value();
}

std::vector<int> right_adjoint_bounds(const EModule& L) {
    const Base& B = base_of(L);
    const ECategory& A = *L.src;
    const ECategory& M = *L.dst;
    const int na = A.size(), nm = M.size();
    std::vector<int> caps(na * nm, 0);
    auto sat_mul = [](long long a, long long b) { return a == 0 || b == 0 ? 0LL : (a > INT_MAX / b ? (long long)INT_MAX : a * b); };
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nm; ++u) {
            long long total = 0;
            if (B.kind() != BaseKind::SPAN_FINSET) {
                total = static_cast<long long>(set_size(A.ext[x])) * set_size(M.ext[u]);
            } else {
                const int ex = set_size(A.ext[x]), eu = set_size(M.ext[u]);
                for (int a = 0; a < ex; ++a)
                    for (int b = 0; b < eu; ++b) {
                        long long prod = 1;
                        for (int v = 0; v < nm && prod > 0; ++v) {
                            const auto& bh = SpanBase::data(M.hom(v, u));
                            const auto& lh = SpanBase::data(L.at(v, x));
                            for (int c = 0; c < set_size(M.ext[v]) && prod > 0; ++c) {
                                long long base = 0, expo = 0;
                                for (int i = 0; i < bh.apex; ++i) base += bh.right[i] == c && bh.left[i] == b;
                                for (int i = 0; i < lh.apex; ++i) expo += lh.right[i] == c && lh.left[i] == a;
                                for (long long e = 0; e < expo && prod > 0; ++e) prod = sat_mul(prod, base);
                            }
                        }
                        total = std::min<long long>(INT_MAX, total + prod);
                    }
            }
            caps[x * nm + u] = static_cast<int>(total);
        }
    return caps;
}

namespace {

// Element-level search for span-valued modules with fixed components.  Each
// variable is the image of one composite element under an action; the unit
// laws fix some variables outright and every associativity or commutation
// instance is checked as soon as the elements it visits are assigned.
class SpanActionSearch {
public:
    SpanActionSearch(EModule& T, std::size_t budget, std::vector<EModule>& out)
        : T_(T), A_(*T.src), M_(*T.dst), na_(A_.size()), nm_(M_.size()), budget_(budget), out_(out) {}

    // False when the node budget ran out.
    bool run() {
        build_slots();
        if (!build_constraints()) return true;
        search(0);
        return !stopped_;
    }
    std::size_t nodes() const { return nodes_; }

private:
    struct Slot {
        Hom1 src;
        int target;  // component index of the target span
        int first_n, second_n;
        std::vector<std::vector<int>> pidx;  // [first][second] -> composite element
        int offset = 0;
        std::size_t ract = 0;  // index into racts or lacts
        bool right = true;
    };
    struct Step {
        int slot;
        int fixed;
        bool cur_first;  // the running element is the first factor
    };
    struct Path {
        int start;
        std::vector<Step> steps;
    };
    struct Constraint {
        Path p, q;
    };

    static const SpanData& sd(const Hom1& f) { return SpanBase::data(f); }
    int comp(int u, int x) const { return u * na_ + x; }

    int add_slot(const Hom1& f, const Hom1& g, int target, std::size_t where, bool right) {
        Slot s;
        s.src = T_.src->base->compose1(g, f);
        s.target = target;
        s.first_n = sd(f).apex;
        s.second_n = sd(g).apex;
        s.pidx = pair_index(sd(f), sd(g));
        s.offset = static_cast<int>(val_.size());
        s.ract = where;
        s.right = right;
        const auto& tgt = sd(T_.comps[target]);
        const auto& src = sd(s.src);
        for (int e = 0; e < src.apex; ++e) {
            std::vector<int> dom;
            for (int k = 0; k < tgt.apex; ++k)
                if (tgt.left[k] == src.left[e] && tgt.right[k] == src.right[e]) dom.push_back(k);
            domain_.push_back(std::move(dom));
            val_.push_back(-1);
        }
        slots_.push_back(std::move(s));
        return static_cast<int>(slots_.size()) - 1;
    }

    void build_slots() {
        rs_.assign(static_cast<std::size_t>(na_) * na_ * nm_, -1);
        ls_.assign(static_cast<std::size_t>(na_) * nm_ * nm_, -1);
        for (int x = 0; x < na_; ++x)
            for (int y = 0; y < na_; ++y)
                for (int u = 0; u < nm_; ++u) {
                    std::size_t w = (x * na_ + y) * nm_ + u;
                    rs_[w] = add_slot(A_.hom(x, y), T_.at(u, x), comp(u, y), w, true);
                }
        for (int x = 0; x < na_; ++x)
            for (int u = 0; u < nm_; ++u)
                for (int v = 0; v < nm_; ++v) {
                    std::size_t w = (x * nm_ + u) * nm_ + v;
                    ls_[w] = add_slot(T_.at(v, x), M_.hom(u, v), comp(u, x), w, false);
                }
        watch_.assign(val_.size(), {});
    }
    int R(int x, int y, int u) const { return rs_[(x * na_ + y) * nm_ + u]; }
    int L(int x, int u, int v) const { return ls_[(x * nm_ + u) * nm_ + v]; }

    // Variable for (first, second) in a slot, or -1.
    int var(int slot, int first, int second) const {
        int p = slots_[slot].pidx[first][second];
        return p < 0 ? -1 : slots_[slot].offset + p;
    }

    void add(Constraint c) {
        int id = static_cast<int>(cons_.size());
        for (const Path* path : {&c.p, &c.q})
            for (const Step& s : path->steps) {
                const Slot& sl = slots_[s.slot];
                const int n = s.cur_first ? sl.first_n : sl.second_n;
                for (int cur = 0; cur < n; ++cur) {
                    int v = s.cur_first ? var(s.slot, cur, s.fixed) : var(s.slot, s.fixed, cur);
                    if (v >= 0 && (watch_[v].empty() || watch_[v].back() != id)) watch_[v].push_back(id);
                }
            }
        cons_.push_back(std::move(c));
    }

    // Element reached by a path, -1 if some variable is unassigned.
    int walk(const Path& p) const {
        int cur = p.start;
        for (const Step& s : p.steps) {
            int v = s.cur_first ? var(s.slot, cur, s.fixed) : var(s.slot, s.fixed, cur);
            if (v < 0) throw InternalError("span action search: composite element missing");
            cur = val_[v];
            if (cur < 0) return -1;
        }
        return cur;
    }

    bool force(int v, int value) {
        const auto& d = domain_[v];
        if (std::find(d.begin(), d.end(), value) == d.end()) return false;
        if (val_[v] >= 0 && val_[v] != value) return false;
        val_[v] = value;
        return true;
    }

    bool build_constraints() {
        const auto fn = [](const Hom2& a) -> const std::vector<int>& { return SpanBase::fn(a); };
        // unit laws fix variables
        for (int u = 0; u < nm_; ++u)
            for (int x = 0; x < na_; ++x) {
                const auto& t = sd(T_.at(u, x));
                for (int k = 0; k < t.apex; ++k) {
                    int a = fn(A_.j(x))[t.left[k]];
                    if (!force(var(R(x, x, u), a, k), k)) return false;
                    int c = fn(M_.j(u))[t.right[k]];
                    if (!force(var(L(x, u, u), k, c), k)) return false;
                }
            }
        for (int u = 0; u < nm_; ++u)
            for (int x = 0; x < na_; ++x)
                for (int y = 0; y < na_; ++y)
                    for (int z = 0; z < na_; ++z) {
                        const auto& t = sd(T_.at(u, x));
                        const auto& a = sd(A_.hom(x, y));
                        const auto& b = sd(A_.hom(y, z));
                        auto mi = pair_index(b, a);
                        const auto& m = fn(A_.m(x, y, z));
                        for (int bi = 0; bi < b.apex; ++bi)
                            for (int ai = 0; ai < a.apex; ++ai) {
                                if (mi[bi][ai] < 0) continue;
                                for (int k = 0; k < t.apex; ++k) {
                                    if (a.right[ai] != t.left[k]) continue;
                                    add({{k, {{R(x, z, u), m[mi[bi][ai]], false}}},
                                         {k, {{R(x, y, u), ai, false}, {R(y, z, u), bi, false}}}});
                                }
                            }
                    }
        for (int u = 0; u < nm_; ++u)
            for (int v = 0; v < nm_; ++v)
                for (int w = 0; w < nm_; ++w)
                    for (int x = 0; x < na_; ++x) {
                        const auto& t = sd(T_.at(w, x));
                        const auto& c2 = sd(M_.hom(v, w));
                        const auto& c1 = sd(M_.hom(u, v));
                        auto mi = pair_index(c2, c1);
                        const auto& m = fn(M_.m(u, v, w));
                        for (int k = 0; k < t.apex; ++k)
                            for (int i2 = 0; i2 < c2.apex; ++i2) {
                                if (t.right[k] != c2.left[i2]) continue;
                                for (int i1 = 0; i1 < c1.apex; ++i1) {
                                    if (mi[i2][i1] < 0) continue;
                                    add({{k, {{L(x, u, w), m[mi[i2][i1]], true}}},
                                         {k, {{L(x, v, w), i2, true}, {L(x, u, v), i1, true}}}});
                                }
                            }
                    }
        for (int u = 0; u < nm_; ++u)
            for (int v = 0; v < nm_; ++v)
                for (int x = 0; x < na_; ++x)
                    for (int y = 0; y < na_; ++y) {
                        const auto& t = sd(T_.at(v, x));
                        const auto& a = sd(A_.hom(x, y));
                        const auto& c = sd(M_.hom(u, v));
                        for (int k = 0; k < t.apex; ++k)
                            for (int ai = 0; ai < a.apex; ++ai) {
                                if (a.right[ai] != t.left[k]) continue;
                                for (int ci = 0; ci < c.apex; ++ci) {
                                    if (t.right[k] != c.left[ci]) continue;
                                    add({{k, {{L(x, u, v), ci, true}, {R(x, y, u), ai, false}}},
                                         {k, {{R(x, y, v), ai, false}, {L(y, u, v), ci, true}}}});
                                }
                            }
                    }
        for (std::size_t c = 0; c < cons_.size(); ++c)
            if (!consistent(static_cast<int>(c))) return false;
        return true;
    }

    bool consistent(int c) const {
        int p = walk(cons_[c].p);
        if (p < 0) return true;
        int q = walk(cons_[c].q);
        return q < 0 || p == q;
    }

    void search(std::size_t v) {
        if (stopped_) return;
        if (++nodes_ > budget_) {
            stopped_ = true;
            return;
        }
        while (v < val_.size() && val_[v] >= 0) ++v;  // fixed by a unit law
        if (v == val_.size()) {
            emit();
            return;
        }
        for (int value : domain_[v]) {
            val_[v] = value;
            bool ok = true;
            for (int c : watch_[v])
                if (!consistent(c)) {
                    ok = false;
                    break;
                }
            if (ok) search(v + 1);
            if (stopped_) break;
        }
        val_[v] = -1;
    }

    void emit() {
        for (const Slot& s : slots_) {
            std::vector<int> f(val_.begin() + s.offset, val_.begin() + s.offset + sd(s.src).apex);
            Hom2 cell = SpanBase::map(s.src, T_.comps[s.target], std::move(f));
            (s.right ? T_.racts : T_.lacts)[s.ract] = cell;
        }
        Check c = validate(T_);
        if (!c.ok()) throw InternalError("span action search produced an invalid module: " + c.describe());
        out_.push_back(T_);
    }

    EModule& T_;
    const ECategory& A_;
    const ECategory& M_;
    const int na_, nm_;
    std::size_t budget_;
    std::vector<EModule>& out_;
    std::vector<Slot> slots_;
    std::vector<int> rs_, ls_;
    std::vector<std::vector<int>> domain_;
    std::vector<int> val_;
    std::vector<std::vector<int>> watch_;
    std::vector<Constraint> cons_;
    std::size_t nodes_ = 0;
    bool stopped_ = false;
};

}  // namespace

Enumerated<EModule> enumerate_modules(const ECatPtr& A, const ECatPtr& M, const std::vector<int>& caps, int total,
                                      std::size_t limit) {
    const Base& B = *A->base;
    const int na = A->size(), nm = M->size(), nc = na * nm;
    Enumerated<EModule> out;
    std::vector<std::vector<Hom1>> choices(nc);
    for (int u = 0; u < nm; ++u)
        for (int x = 0; x < na; ++x) {
            int c = u * na + x;
            int cap = caps[c];
            if (total >= 0) cap = std::min(cap, total);
            auto e = B.enumerate1(A->ext[x], M->ext[u], cap);
            if (!e.complete) out.complete = false;
            choices[c] = e.items;
        }
    EModule T = EModule::shape(A, M);
    std::size_t examined = 0;
    bool stop = false;

    auto actions = [&]() {
        if (B.kind() == BaseKind::SPAN_FINSET) {
            // search nodes, not candidates
            const std::size_t budget = limit * 64;
            if (examined >= budget) {
                stop = true;
                out.complete = false;
                return;
            }
            std::size_t before = out.items.size();
            SpanActionSearch s(T, budget - examined, out.items);
            if (!s.run()) {
                stop = true;
                out.complete = false;
            }
            examined += s.nodes() + (out.items.size() - before);
            return;
        }
        struct Slot {
            Hom2* where;
            std::vector<Hom2> cands;
            std::function<bool(const Hom2&)> unit_ok;
        };
        std::vector<Slot> slots;
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < na; ++y)
                for (int u = 0; u < nm; ++u) {
                    Hom1 src = B.compose1(T.at(u, x), A->hom(x, y));
                    auto e = B.enumerate2(src, T.at(u, y), limit);
                    if (!e.complete) out.complete = false;
                    if (e.items.empty()) return;
                    Slot s{&T.racts[(x * na + y) * nm + u], e.items, nullptr};
                    if (x == y) {
                        const Hom1 t = T.at(u, x);
                        Hom2 pre = B.vcomp(B.whisker_left(t, A->j(x)), B.runit_inv(t));
                        s.unit_ok = [&B, pre, t](const Hom2& a) { return B.eq2(B.vcomp(a, pre), B.id2(t)); };
                    }
                    slots.push_back(std::move(s));
                }
        for (int x = 0; x < na; ++x)
            for (int u = 0; u < nm; ++u)
                for (int v = 0; v < nm; ++v) {
                    Hom1 src = B.compose1(M->hom(u, v), T.at(v, x));
                    auto e = B.enumerate2(src, T.at(u, x), limit);
                    if (!e.complete) out.complete = false;
                    if (e.items.empty()) return;
                    Slot s{&T.lacts[(x * nm + u) * nm + v], e.items, nullptr};
                    if (u == v) {
                        const Hom1 t = T.at(u, x);
                        Hom2 pre = B.vcomp(B.whisker_right(M->j(u), t), B.lunit_inv(t));
                        s.unit_ok = [&B, pre, t](const Hom2& a) { return B.eq2(B.vcomp(a, pre), B.id2(t)); };
                    }
                    slots.push_back(std::move(s));
                }
        for (auto& s : slots)
            if (s.unit_ok) {
                std::vector<Hom2> keep;
                for (auto& c : s.cands)
                    if (s.unit_ok(c)) keep.push_back(c);
                s.cands = std::move(keep);
                if (s.cands.empty()) return;
            }
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (stop) return;
            if (i == slots.size()) {
                if (++examined > limit) {
                    stop = true;
                    out.complete = false;
                    return;
                }
                if (validate(T).ok()) out.items.push_back(T);
                return;
            }
            for (const auto& c : slots[i].cands) {
                *slots[i].where = c;
                rec(i + 1);
                if (stop) return;
            }
        };
        rec(0);
    };

    std::function<void(int, int)> comp = [&](int c, int used) {
        if (stop) return;
        if (c == nc) {
            actions();
            return;
        }
        for (const auto& h : choices[c]) {
            int k = B.carrier(h);
            if (total >= 0 && used + k > total) continue;
            T.comps[c] = h;
            comp(c + 1, used + k);
            if (stop) return;
        }
    };
    comp(0, 0);
    return out;
}

Enumerated<ModCell> enumerate_modcells(const EModule& T, const EModule& S, std::size_t limit) {
    same_boundary_or_throw(T, S, "enumerate_modcells");
    const Base& B = base_of(T);
    Enumerated<ModCell> out;
    std::vector<std::vector<Hom2>> cands;
    for (std::size_t c = 0; c < T.comps.size(); ++c) {
        auto e = B.enumerate2(T.comps[c], S.comps[c], limit);
        if (!e.complete) out.complete = false;
        if (e.items.empty()) return out;
        cands.push_back(e.items);
    }
    ModCell f = blank(T, S);
    std::size_t examined = 0;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop) return;
        if (i == cands.size()) {
            if (++examined > limit) {
                stop = true;
                out.complete = false;
                return;
            }
            if (validate(f).ok()) out.items.push_back(f);
            return;
        }
        for (const auto& c : cands[i]) {
            f.comps[i] = c;
            rec(i + 1);
            if (stop) return;
        }
    };
    rec(0);
    return out;
}

namespace {

bool caps_within(const std::vector<int>& bounds, int cap) {
    for (int b : bounds)
        if (b > cap) return false;
    return true;
}

std::vector<int> clamp(const std::vector<int>& bounds, int cap) {
    std::vector<int> c = bounds;
    for (int& b : c) b = std::min(b, cap);
    return c;
}

}  // namespace

RightAdjointSearch find_right_adjoint(const EModule& L, int cap, std::size_t limit) {
    RightAdjointSearch out;
    auto t = find_tightening(L);
    if (t.verdict == Verdict::YES) {
        AdjunctionWitness w = representable_adjunction(*t.functor);
        // Transport along phi : B(1,D) => L.
        const ModCell& phi = *t.iso;
        ModCell phinv = *modcell_inverse(phi);
        ModComposite RB = mod_compose(w.right, w.left), RL = mod_compose(w.right, L);
        ModComposite BR = mod_compose(w.left, w.right), LR = mod_compose(L, w.right);
        AdjunctionWitness v;
        v.left = L;
        v.right = w.right;
        v.unit = modcell_vcomp(modcell_hcomp(modcell_id(w.right), phi, RB, RL), w.unit);
        v.counit = modcell_vcomp(w.counit, modcell_hcomp(phinv, modcell_id(w.right), LR, BR));
        if (!adjunction_check(v)) throw InternalError("transported adjunction fails its triangles");
        out.verdict = Verdict::YES;
        out.witness = v;
        return out;
    }
    auto bounds = right_adjoint_bounds(L);
    bool complete = caps_within(bounds, cap);
    auto cands = enumerate_modules(L.dst, L.src, clamp(bounds, cap), -1, limit);
    if (!cands.complete) complete = false;
    EModule idA = mod_id(L.src), idB = mod_id(L.dst);
    for (const auto& R : cands.items) {
        ModComposite RL = mod_compose(R, L), LR = mod_compose(L, R);
        auto units = enumerate_modcells(idA, RL.composite, limit);
        auto counits = enumerate_modcells(LR.composite, idB, limit);
        if (!units.complete || !counits.complete) complete = false;
        for (const auto& e : units.items)
            for (const auto& c : counits.items) {
                AdjunctionWitness w{L, R, e, c};
                if (adjunction_check(w)) {
                    out.verdict = Verdict::YES;
                    out.witness = w;
                    return out;
                }
            }
    }
    out.verdict = complete ? Verdict::NO : Verdict::UNKNOWN;
    return out;
}

EquivalenceResult is_equivalence(const EModule& T, int cap) {
    EquivalenceResult out;
    auto t = find_tightening(T);
    if (t.verdict == Verdict::YES) {
        auto w = representable_adjunction(*t.functor);
        bool iso = modcell_inverse(w.unit).has_value() && modcell_inverse(w.counit).has_value();
        out.verdict = iso ? Verdict::YES : Verdict::NO;
        if (iso) out.inverse = w.right;
        out.reason = iso ? "representable with invertible unit and counit"
                         : "representable, but the adjunction unit or counit is not invertible";
        return out;
    }
    auto bounds = right_adjoint_bounds(T);
    bool complete = caps_within(bounds, cap);
    auto cands = enumerate_modules(T.dst, T.src, clamp(bounds, cap), -1, 20000);
    if (!cands.complete) complete = false;
    for (const auto& S : cands.items)
        if (check_pseudo_inverse(T, S)) {
            out.verdict = Verdict::YES;
            out.inverse = S;
            out.reason = "pseudo-inverse found by search";
            return out;
        }
    out.verdict = complete ? Verdict::NO : Verdict::UNKNOWN;
    out.reason = complete ? "no pseudo-inverse within the carrier bound" : "search bound reached";
    return out;
}

std::string CatObj::key() const {
    std::ostringstream s;
    s << "cat:" << static_cast<const void*>(cat.get());
    return s.str();
}

bool ModData::same(const CellData& o) const {
    auto p = dynamic_cast<const ModData*>(&o);
    return p && same_module(mod, p->mod);
}

bool CellD::same(const CellData& o) const {
    auto p = dynamic_cast<const CellD*>(&o);
    return p && eq_modcell(cell, p->cell);
}

ModBase::ModBase(BasePtr inner, ArityClass kappa) : inner_(std::move(inner)) { arity_ = kappa; }

std::string ModBase::name() const { return "Mod(" + inner_->name() + ")"; }

Obj ModBase::obj(const ECatPtr& A) const { return Obj(std::make_shared<CatObj>(A)); }

Hom1 ModBase::wrap(const EModule& T) const {
    auto d = std::make_shared<ModData>();
    d->mod = T;
    return Hom1{obj(T.src), obj(T.dst), d};
}

Hom2 ModBase::wrap(const ModCell& f) const { return mk(wrap(f.src), wrap(f.dst), f); }

Hom2 ModBase::mk(const Hom1& s, const Hom1& t, ModCell c) const {
    auto d = std::make_shared<CellD>();
    d->cell = std::move(c);
    return Hom2{s, t, d};
}

std::shared_ptr<const ModBase::Entry> ModBase::entry(const Hom1& g, const Hom1& f) const {
    auto key = std::make_pair(g.d.get(), f.d.get());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = comp_cache_.find(key);
        if (it != comp_cache_.end()) return it->second;
    }
    auto e = std::make_shared<Entry>();
    e->g = g;
    e->f = f;
    e->w = mod_compose(mod(g), mod(f));
    e->result = wrap(e->w.composite);
    std::lock_guard<std::mutex> lock(mu_);
    return comp_cache_.emplace(key, e).first->second;
}

std::shared_ptr<const ModComposite> ModBase::witness(const Hom1& g, const Hom1& f) const {
    auto e = entry(g, f);
    return std::shared_ptr<const ModComposite>(e, &e->w);
}

void ModBase::check_obj(const Obj& a) const {
    const auto& A = cat(a);
    if (!A || !A->base) throw StructuralError("Mod object has no category");
    if (A->base != inner_ && A->base->name() != inner_->name())
        throw StructuralError("category lives over " + A->base->name() + ", expected " + inner_->name());
}

void ModBase::check1(const Hom1& f) const {
    const auto& T = mod(f);
    if (cat(f.src) != T.src || cat(f.dst) != T.dst) throw StructuralError("module 1-cell has inconsistent boundary");
    check_obj(f.src);
    check_obj(f.dst);
}

Hom1 ModBase::id1(const Obj& a) const {
    const ECatPtr& A = cat(a);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = id_cache_.find(A.get());
        if (it != id_cache_.end()) return it->second.second;
    }
    Hom1 h = wrap(mod_id(A));
    h.src = a;
    h.dst = a;
    std::lock_guard<std::mutex> lock(mu_);
    return id_cache_.emplace(A.get(), std::make_pair(A, h)).first->second.second;
}

Hom1 ModBase::compose1(const Hom1& g, const Hom1& f) const {
    if (f.dst != g.src) throw StructuralError("Mod compose1: 1-cells are not composable");
    return entry(g, f)->result;
}

Hom2 ModBase::id2(const Hom1& f) const { return mk(f, f, modcell_id(mod(f))); }

Hom2 ModBase::vcomp(const Hom2& b, const Hom2& a) const {
    if (!eq1(a.t, b.s)) throw StructuralError("Mod vcomp: cells are not composable");
    return mk(a.s, b.t, modcell_vcomp(cell(b), cell(a)));
}

Hom2 ModBase::hcomp(const Hom2& b, const Hom2& a) const {
    auto src = entry(b.s, a.s);
    auto dst = entry(b.t, a.t);
    return mk(src->result, dst->result, modcell_hcomp(cell(b), cell(a), src->w, dst->w));
}

bool ModBase::eq2(const Hom2& a, const Hom2& b) const { return eq_modcell(cell(a), cell(b)); }

std::optional<Hom2> ModBase::inverse2(const Hom2& a) const {
    auto inv = modcell_inverse(cell(a));
    if (!inv) return std::nullopt;
    return mk(a.t, a.s, *inv);
}

Hom2 ModBase::assoc(const Hom1& h, const Hom1& g, const Hom1& f) const {
    auto hg = entry(h, g), gf = entry(g, f);
    auto L = entry(hg->result, f), R = entry(h, gf->result);
    return mk(L->result, R->result, associator_from(hg->w, gf->w, L->w, R->w, true));
}

Hom2 ModBase::assoc_inv(const Hom1& h, const Hom1& g, const Hom1& f) const {
    auto hg = entry(h, g), gf = entry(g, f);
    auto L = entry(hg->result, f), R = entry(h, gf->result);
    return mk(R->result, L->result, associator_from(hg->w, gf->w, L->w, R->w, false));
}

Hom2 ModBase::lunit(const Hom1& f) const {
    auto W = entry(id1(f.dst), f);
    return mk(W->result, f, unitor_from(W->w, true, true));
}

Hom2 ModBase::lunit_inv(const Hom1& f) const {
    auto W = entry(id1(f.dst), f);
    return mk(f, W->result, unitor_from(W->w, true, false));
}

Hom2 ModBase::runit(const Hom1& f) const {
    auto W = entry(f, id1(f.src));
    return mk(W->result, f, unitor_from(W->w, false, true));
}

Hom2 ModBase::runit_inv(const Hom1& f) const {
    auto W = entry(f, id1(f.src));
    return mk(f, W->result, unitor_from(W->w, false, false));
}

Coproduct ModBase::coproduct(const std::vector<Hom1>& fs, const Obj& s, const Obj& d) const {
    const ECatPtr& A = cat(s);
    const ECatPtr& M = cat(d);
    const Base& B = *inner_;
    const int na = A->size(), nm = M->size(), k = static_cast<int>(fs.size());
    for (const auto& f : fs)
        if (f.src != s || f.dst != d) throw StructuralError("Mod coproduct: summands have different boundaries");
    EModule S = EModule::shape(A, M);
    std::vector<std::vector<Hom2>> inj(nm * na);
    for (int u = 0; u < nm; ++u)
        for (int x = 0; x < na; ++x) {
            std::vector<Hom1> parts;
            for (const auto& f : fs) parts.push_back(mod(f).at(u, x));
            Coproduct c = B.coproduct(parts, A->ext[x], M->ext[u]);
            S.comps[u * na + x] = c.sum;
            inj[u * na + x] = c.inj;
        }
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int u = 0; u < nm; ++u) {
                std::vector<Hom2> epis, maps;
                for (int i = 0; i < k; ++i) {
                    epis.push_back(B.whisker_right(inj[u * na + x][i], A->hom(x, y)));
                    maps.push_back(B.vcomp(inj[u * na + y][i], mod(fs[i]).ract(x, y, u)));
                }
                S.racts[(x * na + y) * nm + u] =
                    must(B.factor(B.compose1(S.at(u, x), A->hom(x, y)), S.at(u, y), epis, maps), "coproduct action");
            }
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nm; ++u)
            for (int v = 0; v < nm; ++v) {
                std::vector<Hom2> epis, maps;
                for (int i = 0; i < k; ++i) {
                    epis.push_back(B.whisker_left(M->hom(u, v), inj[v * na + x][i]));
                    maps.push_back(B.vcomp(inj[u * na + x][i], mod(fs[i]).lact(x, u, v)));
                }
                S.lacts[(x * nm + u) * nm + v] =
                    must(B.factor(B.compose1(M->hom(u, v), S.at(v, x)), S.at(u, x), epis, maps), "coproduct action");
            }
    Coproduct out;
    out.sum = wrap(S);
    out.sum.src = s;
    out.sum.dst = d;
    for (int i = 0; i < k; ++i) {
        ModCell c = blank(mod(fs[i]), S);
        for (int p = 0; p < nm * na; ++p) c.comps[p] = inj[p][i];
        out.inj.push_back(mk(fs[i], out.sum, c));
    }
    return out;
}

Coequalizer ModBase::refl_coequalizer(const Hom2& f, const Hom2& g) const {
    const ModCell& a = cell(f);
    const ModCell& b = cell(g);
    const EModule& Q = a.dst;
    const ECatPtr& A = Q.src;
    const ECatPtr& M = Q.dst;
    const Base& B = *inner_;
    const int na = A->size(), nm = M->size();
    EModule R = EModule::shape(A, M);
    std::vector<Hom2> q(nm * na);
    for (int p = 0; p < nm * na; ++p) {
        Coequalizer c = B.refl_coequalizer(a.comps[p], b.comps[p]);
        R.comps[p] = c.obj;
        q[p] = c.cocone;
    }
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int u = 0; u < nm; ++u)
                R.racts[(x * na + y) * nm + u] =
                    must(B.factor(B.compose1(R.at(u, x), A->hom(x, y)), R.at(u, y),
                                  {B.whisker_right(q[u * na + x], A->hom(x, y))},
                                  {B.vcomp(q[u * na + y], Q.ract(x, y, u))}),
                         "coequalizer action");
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nm; ++u)
            for (int v = 0; v < nm; ++v)
                R.lacts[(x * nm + u) * nm + v] =
                    must(B.factor(B.compose1(M->hom(u, v), R.at(v, x)), R.at(u, x),
                                  {B.whisker_left(M->hom(u, v), q[v * na + x])},
                                  {B.vcomp(q[u * na + x], Q.lact(x, u, v))}),
                         "coequalizer action");
    Coequalizer out;
    out.obj = wrap(R);
    ModCell c = blank(Q, R);
    c.comps = q;
    out.cocone = mk(f.t, out.obj, c);
    return out;
}

std::optional<Hom2> ModBase::factor(const Hom1& m, const Hom1& r, const std::vector<Hom2>& epis,
                                    const std::vector<Hom2>& maps) const {
    if (epis.size() != maps.size()) throw StructuralError("Mod factor: epis and maps differ in number");
    const EModule& M = mod(m);
    const EModule& R = mod(r);
    same_boundary_or_throw(M, R, "Mod factor");
    const Base& B = *inner_;
    ModCell c = blank(M, R);
    for (std::size_t p = 0; p < M.comps.size(); ++p) {
        std::vector<Hom2> e, k;
        for (std::size_t i = 0; i < epis.size(); ++i) {
            e.push_back(cell(epis[i]).comps[p]);
            k.push_back(cell(maps[i]).comps[p]);
        }
        auto h = B.factor(M.comps[p], R.comps[p], e, k);
        if (!h) return std::nullopt;
        c.comps[p] = *h;
    }
    if (!validate(c).ok()) return std::nullopt;
    return mk(m, r, c);
}

std::optional<std::pair<Hom2, Hom2>> ModBase::iso1(const Hom1& f, const Hom1& g) const {
    auto r = module_iso(mod(f), mod(g));
    if (!r.iso) return std::nullopt;
    return std::make_pair(mk(f, g, r.iso->first), mk(g, f, r.iso->second));
}

bool ModBase::is_tight(const Hom1& f) const { return find_tightening(mod(f)).verdict == Verdict::YES; }

std::optional<Hom1> ModBase::tighten(const Hom1& f) const {
    auto t = find_tightening(mod(f));
    if (t.verdict != Verdict::YES) return std::nullopt;
    return wrap(representable(*t.functor));
}

std::optional<Adjoint> ModBase::right_adjoint(const Hom1& f) const {
    auto r = find_right_adjoint(mod(f));
    if (r.verdict != Verdict::YES) return std::nullopt;
    Adjoint a;
    a.right = wrap(r.witness->right);
    a.unit = wrap(r.witness->unit);
    a.counit = wrap(r.witness->counit);
    return a;
}

int ModBase::carrier(const Hom1& f) const {
    int n = 0;
    for (const auto& c : mod(f).comps) n += inner_->carrier(c);
    return n;
}

std::string ModBase::show1(const Hom1& f) const {
    const auto& T = mod(f);
    std::string s = "module " + std::to_string(T.na()) + "->" + std::to_string(T.nb()) + " [";
    for (std::size_t i = 0; i < T.comps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(inner_->carrier(T.comps[i]));
    }
    return s + "]";
}

}  // namespace ck
