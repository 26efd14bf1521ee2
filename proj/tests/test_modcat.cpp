#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "collagekit/bridge.hpp"
#include "collagekit/coherence.hpp"
#include "collagekit/modcat.hpp"
#include "collagekit/oracle.hpp"
#include "collagekit/quantale.hpp"
#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

using namespace ck;

namespace {

BasePtr spans() { return std::make_shared<SpanBase>(ArityClass::SINGLETON); }

struct Triple {
    FinCatPtr K, L, M;
    ECatPtr A, B, C;
    Profunctor S, T;
};

Triple random_triple(Corpus& c, const BasePtr& base) {
    Triple t;
    t.K = std::make_shared<FinCategory>(c.category(4, 12));
    t.L = std::make_shared<FinCategory>(c.category(4, 12));
    t.M = std::make_shared<FinCategory>(c.category(4, 12));
    t.A = fincat_to_ecat(*t.K, base);
    t.B = fincat_to_ecat(*t.L, base);
    t.C = fincat_to_ecat(*t.M, base);
    t.S = c.profunctor(t.K, t.L, 2);
    t.T = c.profunctor(t.L, t.M, 2);
    return t;
}

void check_coherence(const Base& B, const Hom1& f, const Hom1& g, const Hom1& h, const Hom1& k) {
    Hom2 lhs = B.vcomp(B.assoc(k, h, B.compose1(g, f)), B.assoc(B.compose1(k, h), g, f));
    Hom2 rhs = B.vcomp(B.whisker_left(k, B.assoc(h, g, f)),
                       B.vcomp(B.assoc(k, B.compose1(h, g), f), B.whisker_right(B.assoc(k, h, g), f)));
    CHECK(B.eq2(lhs, rhs));
    Hom2 tl = B.vcomp(B.whisker_left(g, B.lunit(f)), B.assoc(g, B.id1(f.dst), f));
    CHECK(B.eq2(tl, B.whisker_right(B.runit(g), f)));
    CHECK(B.eq2(B.vcomp(B.assoc_inv(h, g, f), B.assoc(h, g, f)), B.id2(B.compose1(B.compose1(h, g), f))));
    CHECK(B.eq2(B.vcomp(B.assoc(h, g, f), B.assoc_inv(h, g, f)), B.id2(B.compose1(h, B.compose1(g, f)))));
    CHECK(B.eq2(B.vcomp(B.lunit(f), B.lunit_inv(f)), B.id2(f)));
    CHECK(B.eq2(B.vcomp(B.runit(f), B.runit_inv(f)), B.id2(f)));
}

}  // namespace

TEST_CASE("module composition agrees with the coend oracle") {
    auto S = spans();
    Corpus c(2024);
    int agreed = 0;
    for (int t = 0; t < 60; ++t) {
        auto tr = random_triple(c, S);
        auto ms = prof_to_module(tr.S, tr.A, tr.B);
        auto mt = prof_to_module(tr.T, tr.B, tr.C);
        auto w = mod_compose(mt, ms);
        CHECK(validate(w.composite).ok());
        auto got = module_to_prof(w.composite, tr.K, tr.M);
        got.check();
        auto want = prof_compose_coend(tr.T, tr.S);
        bool iso = prof_iso(got, want).has_value();
        CHECK(iso);
        agreed += iso;
    }
    CHECK(agreed == 60);
}

TEST_CASE("hom composed with hom has the coend sizes") {
    auto S = spans();
    auto K = std::make_shared<FinCategory>(FinCategory::walking_arrow());
    auto A = fincat_to_ecat(*K, S);
    auto H = prof_to_module(prof_hom(K), A, A);
    auto w = mod_compose(H, H);
    // 1 . hom is hom again: three elements
    CHECK(SpanBase::data(w.composite.at(0, 0)).apex == 3);
    CHECK(module_iso(w.composite, H).iso.has_value());
    auto want = prof_compose_coend(prof_hom(K), prof_hom(K));
    CHECK(want.size() == 3);
}

TEST_CASE("identity modules, unitors and associators") {
    auto S = spans();
    Corpus c(7);
    for (int t = 0; t < 15; ++t) {
        auto tr = random_triple(c, S);
        auto ms = prof_to_module(tr.S, tr.A, tr.B);
        auto mt = prof_to_module(tr.T, tr.B, tr.C);
        CHECK(validate(mod_id(tr.A)).ok());
        auto [l, li] = mod_lunitor(ms);
        auto [r, ri] = mod_runitor(ms);
        CHECK(validate(l).ok());
        CHECK(validate(r).ok());
        CHECK(eq_modcell(modcell_vcomp(l, li), modcell_id(ms)));
        CHECK(eq_modcell(modcell_vcomp(r, ri), modcell_id(ms)));
        auto hom = prof_to_module(prof_hom(tr.M), tr.C, tr.C);
        auto [a, ai] = mod_associator(hom, mt, ms);
        CHECK(validate(a).ok());
        CHECK(eq_modcell(modcell_vcomp(ai, a), modcell_id(a.src)));
        CHECK(eq_modcell(modcell_vcomp(a, ai), modcell_id(a.dst)));
    }
}

TEST_CASE("pentagon and triangle in Mod of spans") {
    auto S = spans();
    auto MB = std::make_shared<ModBase>(S, ArityClass::FINITE);
    Corpus c(99);
    int done = 0;
    for (int t = 0; t < 20; ++t) {
        auto K = std::make_shared<FinCategory>(c.category(3, 6));
        auto L = std::make_shared<FinCategory>(c.category(3, 6));
        auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S);
        Hom1 f = MB->wrap(prof_to_module(c.profunctor(K, L, 2), A, B));
        Hom1 g = MB->wrap(prof_to_module(c.profunctor(L, L, 2), B, B));
        Hom1 h = MB->wrap(prof_to_module(c.profunctor(L, K, 2), B, A));
        Hom1 k = MB->wrap(prof_to_module(c.profunctor(K, K, 2), A, A));
        check_coherence(*MB, f, g, h, k);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("pentagon and triangle in Mod of a quantaloid") {
    auto Q = std::make_shared<QuantaloidBase>(Quantale::boolean());
    auto MB = std::make_shared<ModBase>(Q, ArityClass::FINITE);
    std::mt19937 rng(3);
    auto cat = [&](int n) {
        auto A = discrete_cat(Q, std::vector<Obj>(n, set_obj(1)));
        return A;
    };
    for (int t = 0; t < 20; ++t) {
        auto A = cat(2), B = cat(1);
        auto random_module = [&](const ECatPtr& X, const ECatPtr& Y) {
            // components arbitrary; actions over discrete categories are forced
            EModule T = EModule::shape(X, Y);
            for (auto& h : T.comps) h = Q->make(1, 1, {static_cast<int>(rng() % 2)});
            for (int x = 0; x < X->size(); ++x)
                for (int y = 0; y < X->size(); ++y)
                    for (int u = 0; u < Y->size(); ++u)
                        T.racts[(x * X->size() + y) * Y->size() + u] =
                            Q->token(Q->compose1(T.at(u, x), X->hom(x, y)), T.at(u, y));
            for (int x = 0; x < X->size(); ++x)
                for (int u = 0; u < Y->size(); ++u)
                    for (int v = 0; v < Y->size(); ++v)
                        T.lacts[(x * Y->size() + u) * Y->size() + v] =
                            Q->token(Q->compose1(Y->hom(u, v), T.at(v, x)), T.at(u, x));
            REQUIRE(validate(T).ok());
            return MB->wrap(T);
        };
        check_coherence(*MB, random_module(A, B), random_module(B, A), random_module(A, A), random_module(A, B));
    }
}

TEST_CASE("hat is a pseudofunctor and locally fully faithful") {
    auto S = std::make_shared<SpanBase>();
    std::mt19937 rng(17);
    int pairs = 0;
    for (int t = 0; t < 40; ++t) {
        int a = 1 + rng() % 2, b = 1 + rng() % 2, d = 1 + rng() % 2;
        auto rand_span = [&](int s, int e) {
            int n = rng() % 5;
            std::vector<int> l, r;
            for (int i = 0; i < n; ++i) {
                l.push_back(rng() % s);
                r.push_back(rng() % e);
            }
            return SpanBase::make(s, e, l, r);
        };
        Hom1 f = rand_span(a, b), g = rand_span(b, d);
        auto hf = hat_loose(S, f);
        auto hg = hat_loose(S, g);
        hg.src = hf.dst;  // share the middle category
        auto w = mod_compose(hg, hf);
        auto hgf = hat_loose(S, S->compose1(g, f));
        hgf.src = hf.src;
        hgf.dst = hg.dst;
        CHECK(module_iso(w.composite, hgf).iso.has_value());
        Hom1 f2 = rand_span(a, b);
        auto hf2 = hat_loose(S, f2);
        hf2.src = hf.src;
        hf2.dst = hf.dst;
        auto cells = enumerate_modcells(hf, hf2, 100000);
        auto base_cells = S->enumerate2(f, f2, 100000);
        CHECK(cells.complete);
        CHECK(cells.items.size() == base_cells.items.size());
        ++pairs;
    }
    CHECK(pairs == 40);
}

TEST_CASE("representable modules, their adjoints and transformations") {
    auto S = spans();
    auto cats = std::vector<FinCatPtr>{std::make_shared<FinCategory>(FinCategory::walking_arrow()),
                                       std::make_shared<FinCategory>(FinCategory::walking_iso()),
                                       std::make_shared<FinCategory>(FinCategory::monoid(2, {0, 1, 1, 0}, "z2"))};
    for (const auto& K : cats)
        for (const auto& L : cats) {
            auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S);
            auto fs = all_functors(*K, *L);
            for (const auto& F : fs) {
                auto D = fin_to_efunctor(*K, *L, F, A, B);
                auto R = representable(D);
                CHECK(validate(R).ok());
                auto want = prof_representable(K, L, F);
                CHECK(prof_iso(module_to_prof(R, K, L), want).has_value());
                auto Co = corepresentable(D);
                CHECK(validate(Co).ok());
                CHECK(prof_iso(module_to_prof(Co, L, K), prof_corepresentable(K, L, F)).has_value());
                auto w = representable_adjunction(D);
                CHECK(adjunction_check(w));
                auto tight = find_tightening(R);
                REQUIRE(tight.verdict == Verdict::YES);
                // the representing functor is only determined up to iso
                CHECK(validate(*tight.iso).ok());
                CHECK(module_iso(representable(*tight.functor), R).iso.has_value());
                if (L->nobj == 1 || L->name == "arrow")
                    CHECK(efunctor_to_fin(*K, *L, *tight.functor).obj == F.obj);
            }
            for (const auto& F : fs)
                for (const auto& G : fs)
                    for (const auto& n : all_transformations(*K, *L, F, G)) {
                        auto D = fin_to_efunctor(*K, *L, F, A, B);
                        auto E = fin_to_efunctor(*K, *L, G, A, B);
                        auto t = nat_to_etrans(*L, n, D, E);
                        auto m = trans_to_modcell(t);
                        CHECK(validate(m).ok());
                        CHECK(eq_trans(modcell_to_trans(m, D, E), t));
                    }
        }
}

TEST_CASE("composites of representables") {
    auto S = spans();
    auto K = std::make_shared<FinCategory>(FinCategory::walking_arrow());
    auto L = std::make_shared<FinCategory>(FinCategory::walking_iso());
    auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S);
    for (const auto& F : all_functors(*K, *L))
        for (const auto& G : all_functors(*L, *K)) {
            auto D = fin_to_efunctor(*K, *L, F, A, B);
            auto E = fin_to_efunctor(*L, *K, G, B, A);
            auto [fwd, bwd] = j_compose_witness(E, D);
            CHECK(validate(fwd).ok());
            CHECK(validate(bwd).ok());
            CHECK(eq_modcell(modcell_vcomp(bwd, fwd), modcell_id(fwd.src)));
            CHECK(eq_modcell(modcell_vcomp(fwd, bwd), modcell_id(fwd.dst)));
        }
}

TEST_CASE("a module with singleton components into two points is not representable") {
    auto S = std::make_shared<SpanBase>();
    auto A = discrete_cat(S, {set_obj(1)});
    auto B = discrete_cat(S, {set_obj(1), set_obj(1)});
    EModule T = EModule::shape(A, B);
    for (int u = 0; u < 2; ++u) T.comps[u] = SpanBase::make(1, 1, {0}, {0});
    T.racts[0] = S->runit(T.comps[0]);
    T.racts[1] = S->runit(T.comps[1]);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
            T.lacts[u * 2 + v] = u == v ? S->lunit(T.comps[u]) : S->from_initial(S->compose1(B->hom(u, v), T.comps[v]), T.comps[u]);
    REQUIRE(validate(T).ok());
    auto t = find_tightening(T);
    CHECK(t.verdict == Verdict::NO);
    auto e = is_equivalence(T, 4);
    CHECK(e.verdict == Verdict::NO);
    auto r = find_right_adjoint(T, 4);
    CHECK(r.verdict == Verdict::NO);
}

TEST_CASE("equivalences between equivalent categories") {
    auto S = spans();
    auto K = std::make_shared<FinCategory>(FinCategory::terminal());
    auto L = std::make_shared<FinCategory>(FinCategory::walking_iso());
    auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S);
    auto D = fin_to_efunctor(*K, *L, all_functors(*K, *L)[0], A, B);
    auto e = is_equivalence(representable(D), 4);
    CHECK(e.verdict == Verdict::YES);
    REQUIRE(e.inverse.has_value());
    CHECK(check_pseudo_inverse(representable(D), *e.inverse));

    auto W = std::make_shared<FinCategory>(FinCategory::walking_arrow());
    auto C = fincat_to_ecat(*W, S);
    auto G = fin_to_efunctor(*K, *W, all_functors(*K, *W)[0], A, C);
    CHECK(is_equivalence(representable(G), 4).verdict == Verdict::NO);
    CHECK(is_equivalence(mod_id(C), 4).verdict == Verdict::YES);
}

TEST_CASE("coproducts and coequalizers of modules") {
    auto S = spans();
    auto MB = std::make_shared<ModBase>(S, ArityClass::FINITE);
    auto K = std::make_shared<FinCategory>(FinCategory::walking_arrow());
    auto A = fincat_to_ecat(*K, S);
    Hom1 h = MB->wrap(mod_id(A));
    auto c = MB->coproduct({h, h}, h.src, h.dst);
    CHECK(validate(ModBase::mod(c.sum)).ok());
    CHECK(MB->carrier(c.sum) == 6);
    auto q = MB->refl_coequalizer(c.inj[0], c.inj[1]);
    CHECK(validate(ModBase::mod(q.obj)).ok());
    CHECK(MB->carrier(q.obj) == 3);
    // codiagonal-induced quotient merges the two copies
    auto fold = MB->factor(c.sum, h, c.inj, {MB->id2(h), MB->id2(h)});
    REQUIRE(fold.has_value());
    CHECK(validate(ModBase::cell(*fold)).ok());
    auto empty = MB->coproduct({}, h.src, h.dst);
    CHECK(MB->carrier(empty.sum) == 0);
}

namespace {

// Right actions of a monoid (identity 0) on {0..k-1}, by brute force.
long count_actions(int m, const std::vector<int>& mult, int k) {
    if (k == 0) return 1;
    const int cells = k * m;
    std::vector<int> act(cells, 0);
    long n = 0;
    while (true) {
        bool ok = true;
        for (int x = 0; x < k && ok; ++x) {
            ok = act[x * m] == x;
            for (int a = 0; a < m && ok; ++a)
                for (int b = 0; b < m && ok; ++b) ok = act[act[x * m + a] * m + b] == act[x * m + mult[a * m + b]];
        }
        n += ok;
        int i = 0;
        while (i < cells && ++act[i] == k) act[i++] = 0;
        if (i == cells) return n;
    }
}

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TEST_CASE("span module enumeration counts monoid actions and presheaves") {
    auto S = std::make_shared<SpanBase>(ArityClass::FINITE);
    auto point = hat_cat(S, set_obj(1));
    const int cap = 3;
    struct Monoid {
        int m;
        std::vector<int> mult;
    };
    for (const auto& [m, mult] : {Monoid{1, {0}}, Monoid{2, {0, 1, 1, 0}}, Monoid{2, {0, 1, 1, 1}},
                                  Monoid{3, {0, 1, 2, 1, 2, 0, 2, 0, 1}}, Monoid{3, {0, 1, 2, 1, 1, 1, 2, 1, 2}}}) {
        auto A = fincat_to_ecat(FinCategory::monoid(m, mult), S);
        auto e = enumerate_modules(A, point, {cap}, -1, 200000);
        long want = 0;
        for (int k = 0; k <= cap; ++k) want += count_actions(m, mult, k);
        CHECK(e.complete);
        CHECK(static_cast<long>(e.items.size()) == want);
    }
    // functors out of the arrow and the parallel pair
    for (int arrows : {1, 2}) {
        auto K = arrows == 1 ? FinCategory::walking_arrow() : FinCategory::parallel_pair();
        auto A = fincat_partitioned(K, {0, 1}, S);
        auto e = enumerate_modules(A, point, {cap, cap}, -1, 200000);
        long want = 0;
        for (int k0 = 0; k0 <= cap; ++k0)
            for (int k1 = 0; k1 <= cap; ++k1) want += ipow(ipow(k1, k0), arrows);
        CHECK(e.complete);
        CHECK(static_cast<long>(e.items.size()) == want);
    }
}
