#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

using namespace ck;

namespace {

// Brute-force pullback size, independent of the lexicographic table.
int pullback_count(const SpanData& f, const SpanData& g) {
    int n = 0;
    for (int x : f.right)
        for (int y : g.left) n += x == y;
    return n;
}

Hom1 random_span(std::mt19937& rng, int a, int b, int max_apex) {
    int n = std::uniform_int_distribution<int>(0, max_apex)(rng);
    std::vector<int> l(n), r(n);
    for (int i = 0; i < n; ++i) {
        l[i] = std::uniform_int_distribution<int>(0, a - 1)(rng);
        r[i] = std::uniform_int_distribution<int>(0, b - 1)(rng);
    }
    return SpanBase::make(a, b, l, r);
}

Hom1 random_matrix(const QuantaloidBase& B, std::mt19937& rng, int a, int b) {
    std::vector<int> e(a * b);
    for (auto& v : e) v = std::uniform_int_distribution<int>(0, B.quantale().size() - 1)(rng);
    return B.make(a, b, e);
}

// Pentagon and triangle as equalities of composite 2-cells.
void check_coherence(const Base& B, const Hom1& f, const Hom1& g, const Hom1& h, const Hom1& k) {
    Hom2 lhs = B.vcomp(B.assoc(k, h, B.compose1(g, f)), B.assoc(B.compose1(k, h), g, f));
    Hom2 rhs = B.vcomp(B.whisker_left(k, B.assoc(h, g, f)),
                       B.vcomp(B.assoc(k, B.compose1(h, g), f), B.whisker_right(B.assoc(k, h, g), f)));
    CHECK(B.eq2(lhs, rhs));
    Hom2 tl = B.vcomp(B.whisker_left(g, B.lunit(f)), B.assoc(g, B.id1(f.dst), f));
    Hom2 tr = B.whisker_right(B.runit(g), f);
    CHECK(B.eq2(tl, tr));
    CHECK(B.eq2(B.vcomp(B.assoc_inv(h, g, f), B.assoc(h, g, f)), B.id2(B.compose1(B.compose1(h, g), f))));
    CHECK(B.eq2(B.vcomp(B.lunit_inv(f), B.lunit(f)), B.id2(B.compose1(B.id1(f.dst), f))));
    CHECK(B.eq2(B.vcomp(B.runit_inv(f), B.runit(f)), B.id2(B.compose1(f, B.id1(f.src)))));
}

}  // namespace

TEST_CASE("span identity and composition") {
    SpanBase S;
    Hom1 id = S.id1(set_obj(2));
    CHECK(SpanBase::data(id).left == std::vector<int>{0, 1});
    CHECK(SpanBase::data(id).right == std::vector<int>{0, 1});

    Hom1 f = SpanBase::make(2, 1, {0, 1}, {0, 0});
    Hom1 g = SpanBase::make(1, 3, {0}, {2});
    Hom1 gf = S.compose1(g, f);
    CHECK(SpanBase::data(gf).apex == pullback_count(SpanBase::data(f), SpanBase::data(g)));
    CHECK(SpanBase::data(gf).apex == 2);
    CHECK(SpanBase::data(gf).left == std::vector<int>{0, 1});
    CHECK(SpanBase::data(gf).right == std::vector<int>{2, 2});

    CHECK_THROWS_AS(S.compose1(f, f), StructuralError);
    CHECK_THROWS_AS(SpanBase::make(2, 1, {0, 2}, {0, 0}), StructuralError);
}

TEST_CASE("span unit laws hold up to a found iso on a small corpus") {
    SpanBase S;
    std::mt19937 rng(11);
    for (int t = 0; t < 60; ++t) {
        int a = 1 + t % 3, b = 1 + (t / 3) % 3;
        Hom1 f = random_span(rng, a, b, 4);
        CHECK(S.iso1(S.compose1(S.id1(f.dst), f), f).has_value());
        CHECK(S.iso1(S.compose1(f, S.id1(f.src)), f).has_value());
        CHECK(S.is_iso2(S.lunit(f)));
        CHECK(S.is_iso2(S.runit(f)));
    }
}

TEST_CASE("span pullback composite matches brute force") {
    SpanBase S;
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
        Hom1 f = random_span(rng, 2, 3, 4);
        Hom1 g = random_span(rng, 3, 2, 4);
        auto gf = SpanBase::data(S.compose1(g, f));
        CHECK(gf.apex == pullback_count(SpanBase::data(f), SpanBase::data(g)));
        std::multiset<std::pair<int, int>> expect, got;
        const auto& sf = SpanBase::data(f);
        const auto& sg = SpanBase::data(g);
        for (int x = 0; x < sf.apex; ++x)
            for (int y = 0; y < sg.apex; ++y)
                if (sf.right[x] == sg.left[y]) expect.insert({sf.left[x], sg.right[y]});
        for (int i = 0; i < gf.apex; ++i) got.insert({gf.left[i], gf.right[i]});
        CHECK(expect == got);
    }
}

TEST_CASE("span associator is an explicit bijection with pentagon and triangle") {
    SpanBase S;
    std::mt19937 rng(5);
    for (int t = 0; t < 25; ++t) {
        Hom1 f = random_span(rng, 2, 2, 3);
        Hom1 g = random_span(rng, 2, 2, 3);
        Hom1 h = random_span(rng, 2, 2, 3);
        Hom1 k = random_span(rng, 2, 2, 3);
        Hom2 a = S.assoc(h, g, f);
        CHECK(S.is_iso2(a));
        check_coherence(S, f, g, h, k);
    }
}

TEST_CASE("span reflexive coequalizer") {
    SpanBase S;
    Hom1 p = SpanBase::make(1, 1, {0}, {0});
    Hom1 q = SpanBase::make(1, 1, {0, 0, 0}, {0, 0, 0});
    Hom2 f = SpanBase::map(p, q, {0});
    Hom2 g = SpanBase::map(p, q, {1});
    auto c = S.refl_coequalizer(f, g);
    CHECK(SpanBase::data(c.obj).apex == 2);
    CHECK(SpanBase::fn(c.cocone) == std::vector<int>{0, 0, 1});

    auto same = S.refl_coequalizer(f, f);
    CHECK(SpanBase::data(same.obj).apex == 3);
    CHECK(S.is_iso2(same.cocone));

    Hom1 other = SpanBase::make(1, 1, {0}, {0});
    CHECK_THROWS_AS(S.refl_coequalizer(f, S.id2(other)), StructuralError);
}

TEST_CASE("span coproducts") {
    SpanBase S;
    Obj a = set_obj(2), b = set_obj(2);
    auto zero = S.coproduct({}, a, b);
    CHECK(SpanBase::data(zero.sum).apex == 0);
    auto c = S.coproduct({SpanBase::make(2, 2, {0, 1}, {1, 1}), SpanBase::make(2, 2, {0, 0, 1}, {0, 1, 0})}, a, b);
    CHECK(SpanBase::data(c.sum).apex == 5);
    CHECK(SpanBase::fn(c.inj[1]) == std::vector<int>{2, 3, 4});
    CHECK_THROWS_AS(S.coproduct({SpanBase::make(1, 2, {}, {})}, a, b), StructuralError);
    CHECK(S.from_initial(zero.sum, SpanBase::make(2, 2, {0}, {0})).s.dst == b);
}

TEST_CASE("span whiskering preserves coequalizers and coproducts") {
    SpanBase S;
    std::mt19937 rng(17);
    int checked = 0;
    for (int t = 0; t < 80; ++t) {
        Hom1 p = random_span(rng, 2, 2, 2);
        Hom1 q = S.coproduct({p, random_span(rng, 2, 2, 2), p}, p.src, p.dst).sum;
        auto maps = S.enumerate2(p, q, 64).items;
        if (maps.size() < 2) continue;
        Hom2 f = maps.front(), g = maps.back();
        Hom1 k = random_span(rng, 2, 2, 3);
        auto c = S.refl_coequalizer(f, g);
        auto ck = S.refl_coequalizer(S.whisker_left(k, f), S.whisker_left(k, g));
        CHECK(S.iso1(S.compose1(k, c.obj), ck.obj).has_value());
        auto cr = S.refl_coequalizer(S.whisker_right(f, k), S.whisker_right(g, k));
        CHECK(S.iso1(S.compose1(c.obj, k), cr.obj).has_value());
        auto sum = S.coproduct({p, q}, p.src, p.dst);
        auto ks = S.coproduct({S.compose1(k, p), S.compose1(k, q)}, p.src, k.dst);
        CHECK(S.iso1(S.compose1(k, sum.sum), ks.sum).has_value());
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("span whiskering on a 2x2 example") {
    SpanBase S;
    Hom1 p = SpanBase::make(2, 2, {0, 1}, {0, 1});
    Hom1 q = SpanBase::make(2, 2, {1, 0, 1}, {1, 0, 1});
    Hom2 a = SpanBase::map(p, q, {1, 2});
    Hom1 k = SpanBase::make(2, 2, {0, 1, 1}, {1, 0, 1});
    Hom2 w = S.whisker_left(k, a);
    // k.p pairs: (0,0) (1,1) (1,2); k.q pairs: (0,1) (0,2) (1,0) (2,1) (2,2).
    CHECK(SpanBase::fn(w) == std::vector<int>{2, 3, 4});
    auto kp = SpanBase::data(w.s), kq = SpanBase::data(w.t);
    for (std::size_t i = 0; i < SpanBase::fn(w).size(); ++i) {
        int j = SpanBase::fn(w)[i];
        CHECK(kp.left[i] == kq.left[j]);
        CHECK(kp.right[i] == kq.right[j]);
    }
    CHECK(S.eq2(S.whisker_left(S.id1(p.dst), a),
                S.vcomp(S.lunit_inv(q), S.vcomp(a, S.lunit(p)))));
}

TEST_CASE("span iso search") {
    SpanBase S;
    Hom1 f = SpanBase::make(2, 2, {0, 1, 1}, {1, 0, 1});
    Hom1 g = SpanBase::make(2, 2, {1, 0, 1}, {1, 1, 0});
    auto w = S.iso1(f, g);
    REQUIRE(w);
    CHECK(S.eq2(S.vcomp(w->second, w->first), S.id2(f)));
    CHECK(S.eq2(S.vcomp(w->first, w->second), S.id2(g)));
    Hom1 h = SpanBase::make(2, 2, {0, 0, 1}, {1, 0, 1});
    CHECK_FALSE(S.iso1(f, h));
    auto self = S.iso1(f, f);
    REQUIRE(self);
    CHECK(S.eq2(self->first, S.id2(f)));
}

TEST_CASE("span tightness") {
    SpanBase S;
    Hom1 g = SpanBase::graph(3, 2, {1, 0, 1});
    CHECK(S.is_tight(g));
    CHECK(S.eq1(*S.tighten(g), g));
    CHECK_FALSE(S.is_tight(SpanBase::make(2, 2, {0, 0}, {0, 1})));
    Hom1 perm = SpanBase::make(3, 2, {2, 0, 1}, {1, 1, 0});
    CHECK(S.is_tight(perm));
    Hom1 nf = *S.tighten(perm);
    CHECK(S.eq1(nf, SpanBase::graph(3, 2, {1, 0, 1})));
    CHECK(S.eq1(*S.tighten(nf), nf));
    CHECK(S.iso1(nf, perm).has_value());
    CHECK(S.is_tight(S.compose1(SpanBase::graph(2, 2, {1, 1}), g)));

    SpanBase all(ArityClass::FINITE, TightRule::ALL);
    CHECK(all.is_tight(SpanBase::make(2, 2, {0, 0}, {0, 1})));
}

TEST_CASE("span right adjoints of tight cells") {
    SpanBase S;
    Hom1 f = SpanBase::make(3, 2, {2, 0, 1}, {1, 1, 0});
    auto adj = S.right_adjoint(f);
    REQUIRE(adj);
    // Triangle identities.
    Hom2 t1 = S.vcomp(S.lunit(f), S.vcomp(S.whisker_right(adj->counit, f),
                                          S.vcomp(S.assoc_inv(f, adj->right, f),
                                                  S.vcomp(S.whisker_left(f, adj->unit), S.runit_inv(f)))));
    CHECK(S.eq2(t1, S.id2(f)));
    const Hom1& r = adj->right;
    Hom2 t2 = S.vcomp(S.runit(r), S.vcomp(S.whisker_left(r, adj->counit),
                                          S.vcomp(S.assoc(r, f, r),
                                                  S.vcomp(S.whisker_right(adj->unit, r), S.lunit_inv(r)))));
    CHECK(S.eq2(t2, S.id2(r)));
    CHECK_FALSE(S.right_adjoint(SpanBase::make(2, 2, {0, 0}, {0, 1})));
}

TEST_CASE("span enumerations") {
    SpanBase S;
    auto e = S.enumerate1(set_obj(1), set_obj(2), 2);
    // multisets of size <= 2 over 2 types: 1 + 2 + 3
    CHECK(e.items.size() == 6);
    auto t = S.enumerate_tight(set_obj(2), set_obj(3), 100);
    CHECK(t.items.size() == 9);
    CHECK(t.complete);
    for (auto& h : t.items) CHECK(S.is_tight(h));
}

TEST_CASE("boolean quantaloid") {
    QuantaloidBase B(Quantale::boolean());
    CHECK(B.kind() == BaseKind::BOOLEAN_QUANTALE);
    Hom1 id = B.id1(set_obj(3));
    CHECK(QuantaloidBase::data(id).e == std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1});
    std::mt19937 rng(23);
    for (int t = 0; t < 40; ++t) {
        Hom1 m = random_matrix(B, rng, 2, 2);
        CHECK(B.eq1(B.compose1(B.id1(set_obj(2)), m), m));
        Hom1 n = random_matrix(B, rng, 2, 2);
        auto c = B.coproduct({m, n}, m.src, m.dst);
        for (int i = 0; i < 4; ++i)
            CHECK(QuantaloidBase::data(c.sum).e[i] ==
                  (QuantaloidBase::data(m).e[i] | QuantaloidBase::data(n).e[i]));
        // matrix product against or/and brute force
        Hom1 p = B.compose1(n, m);
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                int v = 0;
                for (int j = 0; j < 2; ++j)
                    v |= QuantaloidBase::data(n).at(i, j) & QuantaloidBase::data(m).at(j, k);
                CHECK(QuantaloidBase::data(p).at(i, k) == v);
            }
    }
    Hom1 m = B.make(2, 2, {1, 1, 0, 0});
    auto q = B.refl_coequalizer(B.id2(m), B.id2(m));
    CHECK(B.eq1(q.obj, m));
    CHECK_THROWS_AS(B.token(m, B.make(2, 2, {0, 0, 0, 0})), StructuralError);
}

TEST_CASE("quantaloid coherence is strict") {
    for (auto q : {Quantale::boolean(), Quantale::minplus(3), Quantale::powerset_z2(), Quantale::diamond()}) {
        QuantaloidBase B(q);
        std::mt19937 rng(29);
        for (int t = 0; t < 20; ++t) {
            Hom1 f = random_matrix(B, rng, 2, 3), g = random_matrix(B, rng, 3, 2);
            Hom1 h = random_matrix(B, rng, 2, 2), k = random_matrix(B, rng, 2, 1);
            CHECK(B.eq1(B.compose1(B.compose1(h, g), f), B.compose1(h, B.compose1(g, f))));
            check_coherence(B, f, g, h, k);
        }
    }
}

TEST_CASE("min-plus composite distance") {
    QuantaloidBase M(Quantale::minplus(10));
    const auto& q = M.quantale();
    // points a | m | c with d(a,m) = 2 and d(m,c) = 3.
    Hom1 am = M.make(1, 1, {*q.index("2")});
    Hom1 mc = M.make(1, 1, {*q.index("3")});
    CHECK(q.name(QuantaloidBase::data(M.compose1(mc, am)).e[0]) == "5");
    // Two intermediate points: the minimum over the middle is taken.
    Hom1 f = M.make(1, 2, {*q.index("2"), *q.index("4")});
    Hom1 g = M.make(2, 1, {*q.index("3"), *q.index("0")});
    CHECK(q.name(QuantaloidBase::data(M.compose1(g, f)).e[0]) == "4");
    Hom1 big = M.make(1, 1, {*q.index("7")});
    CHECK(q.name(QuantaloidBase::data(M.compose1(big, big)).e[0]) == "inf");
}

TEST_CASE("quantaloid tightness and adjoints") {
    QuantaloidBase B(Quantale::boolean());
    Hom1 fn = B.make(3, 2, {1, 0, 1, 0, 1, 0});
    CHECK(B.is_tight(fn));
    CHECK_FALSE(B.is_tight(B.make(2, 2, {1, 1, 1, 0})));
    auto adj = B.right_adjoint(fn);
    REQUIRE(adj);
    CHECK(B.eq1(adj->right, B.make(2, 3, {1, 0, 0, 1, 1, 0})));
    CHECK(B.enumerate_tight(set_obj(2), set_obj(3), 100).items.size() == 9);
    CHECK(B.enumerate1(set_obj(1), set_obj(2), 2).items.size() == 4);

    QuantaloidBase custom(Quantale::boolean(), ArityClass::FINITE,
                          [](const Quantale&, const MatData& m) { return m.rows == m.cols; });
    CHECK(custom.is_tight(B.make(2, 2, {1, 1, 1, 1})));
    CHECK_FALSE(custom.is_tight(fn));
}

TEST_CASE("quantale law checks") {
    CHECK_THROWS_AS(Quantale("bad", {"a", "b"}, {0, 1, 1, 1}, {0, 1, 1, 1}, 1), StructuralError);
    for (int k = 0; k < 5; ++k) CHECK_NOTHROW(Quantale::minplus(k));
    CHECK_NOTHROW(Quantale::lukasiewicz(4));
    CHECK_NOTHROW(Quantale::chain_meet(4));
    CHECK(Quantale::minplus(10).bottom() == 11);
}
