#include "collagekit/bridge.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "collagekit/span.hpp"

namespace ck {

namespace {

// Index of the pair (i in f, k in g) in the apex of g.f, or -1.
std::vector<std::vector<int>> pairs(const Hom1& f, const Hom1& g) {
    const auto& a = SpanBase::data(f);
    const auto& b = SpanBase::data(g);
    std::vector<std::vector<int>> idx(a.apex, std::vector<int>(b.apex, -1));
    int p = 0;
    for (int i = 0; i < a.apex; ++i)
        for (int k = 0; k < b.apex; ++k)
            if (a.right[i] == b.left[k]) idx[i][k] = p++;
    return idx;
}

// Inverse of the pair table: p -> (i, k).
std::vector<std::pair<int, int>> unpair(const std::vector<std::vector<int>>& idx) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t k = 0; k < idx[i].size(); ++k)
            if (idx[i][k] >= 0) {
                if (static_cast<int>(out.size()) <= idx[i][k]) out.resize(idx[i][k] + 1);
                out[idx[i][k]] = {static_cast<int>(i), static_cast<int>(k)};
            }
    return out;
}

void require_span(const BasePtr& B) {
    if (!dynamic_cast<const SpanBase*>(B.get())) throw StructuralError("this translation needs the span base");
}

}  // namespace

EModule prof_to_module(const Profunctor& P, const ECatPtr& A, const ECatPtr& B) {
    require_span(A->base);
    const Base& S = *A->base;
    EModule T = EModule::shape(A, B);
    Hom1 c = SpanBase::make(P.A->nobj, P.B->nobj, P.tgt, P.src);
    T.comps[0] = c;
    Hom1 hA = A->hom(0, 0), hB = B->hom(0, 0);
    auto ri = pairs(hA, c);
    std::vector<int> rf;
    for (int a = 0; a < P.A->nmor(); ++a)
        for (int e = 0; e < P.size(); ++e)
            if (ri[a][e] >= 0) rf.push_back(P.act_post(a, e));
    T.racts[0] = SpanBase::map(S.compose1(c, hA), c, rf);
    auto li = pairs(c, hB);
    std::vector<int> lf;
    for (int e = 0; e < P.size(); ++e)
        for (int b = 0; b < P.B->nmor(); ++b)
            if (li[e][b] >= 0) lf.push_back(P.act_pre(e, b));
    T.lacts[0] = SpanBase::map(S.compose1(hB, c), c, lf);
    return T;
}

Profunctor module_to_prof(const EModule& T, const FinCatPtr& A, const FinCatPtr& B) {
    if (T.na() != 1 || T.nb() != 1) throw StructuralError("module_to_prof needs one-object categories");
    const auto& c = SpanBase::data(T.at(0, 0));
    Profunctor P;
    P.A = A;
    P.B = B;
    P.tgt = c.left;
    P.src = c.right;
    const int n = c.apex;
    P.post.assign(A->nmor() * n, -1);
    P.pre.assign(n * B->nmor(), -1);
    auto ri = pairs(T.src->hom(0, 0), T.at(0, 0));
    const auto& rf = SpanBase::fn(T.ract(0, 0, 0));
    for (int a = 0; a < A->nmor(); ++a)
        for (int e = 0; e < n; ++e)
            if (ri[a][e] >= 0) P.post[a * n + e] = rf[ri[a][e]];
    auto li = pairs(T.at(0, 0), T.dst->hom(0, 0));
    const auto& lf = SpanBase::fn(T.lact(0, 0, 0));
    for (int e = 0; e < n; ++e)
        for (int b = 0; b < B->nmor(); ++b)
            if (li[e][b] >= 0) P.pre[e * B->nmor() + b] = lf[li[e][b]];
    return P;
}

ECatPtr fincat_partitioned(const FinCategory& K, const std::vector<int>& group, BasePtr spans) {
    require_span(spans);
    if (static_cast<int>(group.size()) != K.nobj) throw StructuralError("fincat_partitioned: one group per object");
    int n = 0;
    for (int g : group) {
        if (g < 0) throw StructuralError("fincat_partitioned: negative group");
        n = std::max(n, g + 1);
    }
    std::vector<int> local(K.nobj), count(n, 0);
    for (int a = 0; a < K.nobj; ++a) local[a] = count[group[a]]++;
    for (int x = 0; x < n; ++x)
        if (count[x] == 0) throw StructuralError("fincat_partitioned: empty group");
    const Base& B = *spans;
    auto A = std::make_shared<ECategory>();
    A->base = spans;
    for (int x = 0; x < n; ++x) {
        A->names.push_back("b" + std::to_string(x));
        A->ext.push_back(set_obj(count[x]));
    }
    // hom(x, y): morphisms from block x to block y, legs (local cod, local dom).
    std::vector<std::vector<int>> mors(n * n);
    A->homs.resize(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::vector<int> l, r;
            for (int f = 0; f < K.nmor(); ++f)
                if (group[K.dom[f]] == x && group[K.cod[f]] == y) {
                    mors[x * n + y].push_back(f);
                    l.push_back(local[K.cod[f]]);
                    r.push_back(local[K.dom[f]]);
                }
            A->homs[x * n + y] = SpanBase::make(count[y], count[x], l, r);
        }
    auto pos = [&](int x, int y, int f) {
        const auto& v = mors[x * n + y];
        return static_cast<int>(std::find(v.begin(), v.end(), f) - v.begin());
    };
    A->comps.resize(n * n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const Hom1& g = A->hom(x, y);
                const Hom1& f = A->hom(y, z);
                auto idx = pairs(f, g);
                std::vector<int> m;
                for (auto [i, k] : unpair(idx)) m.push_back(pos(x, z, K.compose(mors[y * n + z][i], mors[x * n + y][k])));
                A->comps[(x * n + y) * n + z] = SpanBase::map(B.compose1(g, f), A->hom(x, z), m);
            }
    for (int x = 0; x < n; ++x) {
        std::vector<int> j;
        for (int a = 0; a < K.nobj; ++a)
            if (group[a] == x) j.push_back(pos(x, x, K.ident[a]));
        A->units.push_back(SpanBase::map(B.id1(A->ext[x]), A->hom(x, x), j));
    }
    return A;
}

EFunctor fin_to_efunctor(const FinCategory& K, const FinCategory& L, const FinFunctor& F, const ECatPtr& A,
                         const ECatPtr& B) {
    require_span(A->base);
    const Base& S = *A->base;
    EFunctor D;
    D.src = A;
    D.dst = B;
    D.obj = {0};
    Hom1 cell = SpanBase::graph(K.nobj, L.nobj, F.obj);
    D.cells = {cell};
    Hom1 hK = A->hom(0, 0), hL = B->hom(0, 0);
    // Source pairs (i, dom i) go to (cod i, F i).
    auto tgt = pairs(cell, hL);
    std::vector<int> f;
    for (auto [i, k] : unpair(pairs(hK, cell))) {
        (void)k;
        f.push_back(tgt[K.cod[i]][F.mor[i]]);
    }
    D.sq = {SpanBase::map(S.compose1(cell, hK), S.compose1(hL, cell), f)};
    return D;
}

FinFunctor efunctor_to_fin(const FinCategory& K, const FinCategory& L, const EFunctor& D) {
    const auto& c = SpanBase::data(D.cell(0));
    FinFunctor F;
    F.obj.assign(K.nobj, -1);
    for (int k = 0; k < c.apex; ++k) {
        if (F.obj[c.left[k]] >= 0) throw StructuralError("functor cell is not a graph");
        F.obj[c.left[k]] = c.right[k];
    }
    auto src = unpair(pairs(D.src->hom(0, 0), D.cell(0)));
    auto tgt = unpair(pairs(D.cell(0), D.dst->hom(0, 0)));
    const auto& f = SpanBase::fn(D.square(0, 0));
    F.mor.assign(K.nmor(), -1);
    for (std::size_t p = 0; p < src.size(); ++p) F.mor[src[p].first] = tgt[f[p]].second;
    (void)L;
    return F;
}

ETransformation nat_to_etrans(const FinCategory& L, const NatTransf& t, const EFunctor& D, const EFunctor& E) {
    (void)L;
    const Base& S = *D.src->base;
    ETransformation r;
    r.src = D;
    r.dst = E;
    Hom1 tgt = S.compose1(D.dst->hom(0, 0), E.cell(0));
    auto idx = pairs(E.cell(0), D.dst->hom(0, 0));
    const auto& dc = SpanBase::data(D.cell(0));
    const auto& ec = SpanBase::data(E.cell(0));
    std::vector<int> f;
    for (int k = 0; k < dc.apex; ++k) {
        int a = dc.left[k];
        int k2 = static_cast<int>(std::find(ec.left.begin(), ec.left.end(), a) - ec.left.begin());
        f.push_back(idx[k2][t.comp[a]]);
    }
    r.comps = {SpanBase::map(D.cell(0), tgt, f)};
    return r;
}

NatTransf etrans_to_nat(const FinCategory& L, const ETransformation& t) {
    (void)L;
    const auto& dc = SpanBase::data(t.src.cell(0));
    auto tgt = unpair(pairs(t.dst.cell(0), t.src.dst->hom(0, 0)));
    const auto& f = SpanBase::fn(t.comps[0]);
    NatTransf n;
    n.comp.assign(dc.apex, -1);
    for (int k = 0; k < dc.apex; ++k) n.comp[dc.left[k]] = tgt[f[k]].second;
    return n;
}

bool same_efunctor(const EFunctor& D, const EFunctor& E) {
    if (D.src != E.src || D.dst != E.dst || D.obj != E.obj) return false;
    const Base& B = *D.src->base;
    for (std::size_t x = 0; x < D.cells.size(); ++x)
        if (!B.eq1(D.cells[x], E.cells[x])) return false;
    for (std::size_t i = 0; i < D.sq.size(); ++i)
        if (!B.eq2(D.sq[i], E.sq[i])) return false;
    return true;
}

Enumerated<EFunctor> enumerate_efunctors(const ECatPtr& A, const ECatPtr& C, std::size_t limit) {
    const Base& B = *A->base;
    const int na = A->size(), nc = C->size();
    Enumerated<EFunctor> out;
    EFunctor D;
    D.src = A;
    D.dst = C;
    D.obj.assign(na, 0);
    D.cells.resize(na);
    D.sq.resize(na * na);
    std::size_t examined = 0;
    bool stop = false;
    std::function<void(int)> squares = [&](int i) {
        if (stop) return;
        if (i == na * na) {
            if (++examined > limit) {
                stop = true;
                out.complete = false;
                return;
            }
            if (validate(D).ok()) out.items.push_back(D);
            return;
        }
        int x = i / na, y = i % na;
        auto s = B.enumerate2(B.compose1(D.cell(x), A->hom(x, y)), B.compose1(C->hom(D.obj[x], D.obj[y]), D.cell(y)), limit);
        if (!s.complete) out.complete = false;
        for (const auto& a : s.items) {
            D.sq[i] = a;
            squares(i + 1);
            if (stop) return;
        }
    };
    std::function<void(int)> objects = [&](int x) {
        if (stop) return;
        if (x == na) {
            squares(0);
            return;
        }
        for (int b = 0; b < nc; ++b) {
            auto t = B.enumerate_tight(A->ext[x], C->ext[b], limit);
            if (!t.complete) out.complete = false;
            D.obj[x] = b;
            for (const auto& c : t.items) {
                D.cells[x] = c;
                objects(x + 1);
                if (stop) return;
            }
        }
    };
    objects(0);
    return out;
}

Enumerated<ETransformation> enumerate_etrans(const EFunctor& D, const EFunctor& E, std::size_t limit) {
    const Base& B = *D.src->base;
    const ECategory& C = *D.dst;
    const int n = D.src->size();
    Enumerated<ETransformation> out;
    ETransformation t;
    t.src = D;
    t.dst = E;
    t.comps.resize(n);
    std::size_t examined = 0;
    bool stop = false;
    std::function<void(int)> rec = [&](int x) {
        if (stop) return;
        if (x == n) {
            if (++examined > limit) {
                stop = true;
                out.complete = false;
                return;
            }
            if (validate(t).ok()) out.items.push_back(t);
            return;
        }
        auto s = B.enumerate2(D.cell(x), B.compose1(C.hom(D.obj[x], E.obj[x]), E.cell(x)), limit);
        if (!s.complete) out.complete = false;
        for (const auto& a : s.items) {
            t.comps[x] = a;
            rec(x + 1);
            if (stop) return;
        }
    };
    rec(0);
    return out;
}

Cat1Report cat1_equiv_check(const FinCatPtr& K, const FinCatPtr& L, BasePtr spans, std::size_t limit) {
    Cat1Report r;
    auto fail = [&](std::string why) {
        r.ok = false;
        if (r.detail.empty()) r.detail = std::move(why);
    };
    ECatPtr A = fincat_to_ecat(*K, spans), B = fincat_to_ecat(*L, spans);
    auto oracle = all_functors(*K, *L);
    auto fs = enumerate_efunctors(A, B, limit);
    if (!fs.complete) fail("functor enumeration hit its limit");
    r.functors = static_cast<int>(fs.items.size());
    if (fs.items.size() != oracle.size())
        fail("functor counts differ: " + std::to_string(fs.items.size()) + " vs " + std::to_string(oracle.size()));
    std::map<std::vector<int>, int> seen;
    std::vector<FinFunctor> images;
    for (const auto& D : fs.items) {
        FinFunctor F = efunctor_to_fin(*K, *L, D);
        if (!is_functor(*K, *L, F)) fail("translated functor is not a functor");
        auto key = F.obj;
        key.insert(key.end(), F.mor.begin(), F.mor.end());
        if (seen[key]++) fail("two enriched functors translate to the same functor");
        if (!same_efunctor(fin_to_efunctor(*K, *L, F, A, B), D)) fail("functor round trip is not exact");
        images.push_back(F);
    }
    for (const auto& F : oracle) {
        EFunctor D = fin_to_efunctor(*K, *L, F, A, B);
        if (!validate(D).ok()) fail("translated oracle functor fails validation");
        if (!(efunctor_to_fin(*K, *L, D) == F)) fail("oracle functor round trip is not exact");
    }
    for (std::size_t i = 0; i < fs.items.size() && r.ok; ++i)
        for (std::size_t j = 0; j < fs.items.size() && r.ok; ++j) {
            auto ts = enumerate_etrans(fs.items[i], fs.items[j], limit);
            auto os = all_transformations(*K, *L, images[i], images[j]);
            if (!ts.complete) fail("transformation enumeration hit its limit");
            r.transformations += static_cast<int>(ts.items.size());
            if (ts.items.size() != os.size()) fail("transformation counts differ");
            std::map<std::vector<int>, int> tseen;
            for (const auto& t : ts.items) {
                NatTransf n = etrans_to_nat(*L, t);
                if (!is_natural(*K, *L, images[i], images[j], n)) fail("translated transformation is not natural");
                if (tseen[n.comp]++) fail("two transformations translate to the same one");
                if (!eq_trans(nat_to_etrans(*L, n, fs.items[i], fs.items[j]), t)) fail("transformation round trip is not exact");
            }
            for (const auto& n : os) {
                auto t = nat_to_etrans(*L, n, fs.items[i], fs.items[j]);
                if (!validate(t).ok()) fail("translated oracle transformation fails validation");
                if (!(etrans_to_nat(*L, t) == n)) fail("oracle transformation round trip is not exact");
            }
        }
    return r;
}

}  // namespace ck
