#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "collagekit/bridge.hpp"
#include "collagekit/coherence.hpp"
#include "collagekit/enriched.hpp"
#include "collagekit/oracle.hpp"
#include "collagekit/quantale.hpp"
#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

using namespace ck;

namespace {

BasePtr spans() { return std::make_shared<SpanBase>(); }

std::vector<FinCatPtr> small_categories() {
    std::vector<FinCatPtr> out;
    for (auto K : {FinCategory::terminal(), FinCategory::discrete(2), FinCategory::walking_arrow(),
                   FinCategory::walking_iso(), FinCategory::parallel_pair(),
                   FinCategory::monoid(2, {0, 1, 1, 0}, "z2"), FinCategory::monoid(2, {0, 1, 1, 1}, "and")})
        out.push_back(std::make_shared<FinCategory>(K));
    return out;
}

}  // namespace

TEST_CASE("hat of a base object is a valid one-object category") {
    auto S = spans();
    for (int n = 0; n < 4; ++n) CHECK(validate(*hat_cat(S, set_obj(n))).ok());
    auto Q = std::make_shared<QuantaloidBase>(Quantale::minplus(4));
    CHECK(validate(*hat_cat(Q, set_obj(2))).ok());
}

TEST_CASE("hat of 1-cells and 2-cells") {
    auto S = spans();
    Hom1 f = SpanBase::make(2, 3, {0, 1, 1}, {2, 0, 0});
    CHECK(validate(hat_loose(S, f)).ok());
    Hom1 g = SpanBase::graph(2, 3, {1, 1});
    CHECK(validate(hat_mor(S, g)).ok());
    CHECK_THROWS_AS(hat_mor(S, f), StructuralError);
    Hom2 swap = SpanBase::map(f, f, {0, 2, 1});
    CHECK(validate(hat_2cell(S, swap)).ok());
}

TEST_CASE("discrete categories validate, a mutated unit does not") {
    auto S = spans();
    auto A = discrete_cat(S, {set_obj(1), set_obj(2), set_obj(0)});
    CHECK(validate(*A).ok());
    CHECK(SpanBase::data(A->hom(0, 1)).apex == 0);

    // z2 has two loops on its object; pointing the unit at the generator breaks
    // both unit laws.
    auto Z = *fincat_to_ecat(FinCategory::monoid(2, {0, 1, 1, 0}, "z2"), S);
    CHECK(validate(Z).ok());
    Z.units[0] = SpanBase::map(S->id1(Z.ext[0]), Z.hom(0, 0), {1});
    Check c = validate(Z);
    CHECK(c.status == Check::FAIL);
    CHECK(c.axiom == "left unit");
}

TEST_CASE("a mutated composition is caught with the first failing axiom") {
    auto S = spans();
    auto K = FinCategory::monoid(2, {0, 1, 1, 0}, "z2");
    auto A = *fincat_to_ecat(K, S);
    CHECK(validate(A).ok());
    // z2: send e.e to the generator instead of e
    std::vector<int> m = SpanBase::fn(A.m(0, 0, 0));
    m[0] = 1;
    A.comps[0] = SpanBase::map(A.comps[0].s, A.comps[0].t, m);
    Check c = validate(A);
    CHECK(c.status == Check::FAIL);
    CHECK(c.axiom == "left unit");
}

TEST_CASE("internal categories round trip through spans") {
    auto S = spans();
    auto K = FinCategory::walking_arrow();
    auto A = fincat_to_ecat(K, S);
    CHECK(SpanBase::data(A->hom(0, 0)).apex == 3);
    CHECK(SpanBase::data(S->compose1(A->hom(0, 0), A->hom(0, 0))).apex == 4);
    CHECK(validate(*A).ok());
    CHECK(ecat_to_fincat(*A) == K);
    for (const auto& C : small_categories()) {
        auto E = fincat_to_ecat(*C, S);
        CHECK(validate(*E).ok());
        CHECK(ecat_to_fincat(*E) == *C);
    }
}

TEST_CASE("partitioned categories are valid and agree with the one-object form") {
    auto S = spans();
    auto K = FinCategory::walking_arrow();
    auto A = fincat_partitioned(K, {0, 1}, S);
    CHECK(validate(*A).ok());
    CHECK(SpanBase::data(A->hom(0, 1)).apex == 1);
    CHECK(SpanBase::data(A->hom(1, 0)).apex == 0);
    auto one = fincat_partitioned(K, {0, 0}, S);
    CHECK(validate(*one).ok());
    CHECK(ecat_to_fincat(*one) == K);
    Corpus corpus(11);
    for (int t = 0; t < 20; ++t) {
        auto C = corpus.category(4, 12);
        std::vector<int> g(C.nobj);
        for (int a = 0; a < C.nobj; ++a) g[a] = a % 2;
        if (C.nobj == 1) g = {0};
        CHECK(validate(*fincat_partitioned(C, g, S)).ok());
    }
}

TEST_CASE("functor composition matches the oracle, with coherent icons") {
    auto S = spans();
    auto cats = small_categories();
    int checked = 0;
    for (const auto& K : cats)
        for (const auto& L : cats)
            for (const auto& M : {cats[2], cats[5]}) {
                auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S), C = fincat_to_ecat(*M, S);
                auto fs = all_functors(*K, *L);
                auto gs = all_functors(*L, *M);
                for (std::size_t i = 0; i < fs.size() && i < 3; ++i)
                    for (std::size_t j = 0; j < gs.size() && j < 3; ++j) {
                        auto D = fin_to_efunctor(*K, *L, fs[i], A, B);
                        auto E = fin_to_efunctor(*L, *M, gs[j], B, C);
                        auto ED = efun_compose(E, D);
                        CHECK(validate(ED).ok());
                        CHECK(efunctor_to_fin(*K, *M, ED) == fin_compose(*M, gs[j], fs[i]));
                        CHECK(validate(efun_assoc_icon(efun_id(C), E, D)).ok());
                        CHECK(validate(efun_lunit_icon(ED)).ok());
                        CHECK(validate(efun_runit_icon(ED)).ok());
                        ++checked;
                    }
            }
    CHECK(checked > 40);
}

TEST_CASE("transformations: vertical composition matches the oracle, interchange holds") {
    auto S = spans();
    auto K = std::make_shared<FinCategory>(FinCategory::walking_arrow());
    auto L = std::make_shared<FinCategory>(FinCategory::preorder(3, {true, true, true, false, true, true, false, false, true}));
    auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S);
    auto fs = all_functors(*K, *L);
    REQUIRE(fs.size() == 6);
    int composed = 0;
    for (const auto& F : fs)
        for (const auto& G : fs)
            for (const auto& H : fs)
                for (const auto& s : all_transformations(*K, *L, F, G))
                    for (const auto& t : all_transformations(*K, *L, G, H)) {
                        auto D = fin_to_efunctor(*K, *L, F, A, B);
                        auto E = fin_to_efunctor(*K, *L, G, A, B);
                        auto X = fin_to_efunctor(*K, *L, H, A, B);
                        auto es = nat_to_etrans(*L, s, D, E);
                        auto et = nat_to_etrans(*L, t, E, X);
                        auto v = etrans_vcompose(et, es);
                        CHECK(validate(v).ok());
                        CHECK(etrans_to_nat(*L, v) == fin_vcompose(*L, t, s));
                        ++composed;
                    }
    CHECK(composed > 10);

    // both whiskered decompositions of a horizontal composite agree
    auto M = std::make_shared<FinCategory>(FinCategory::walking_arrow());
    auto C = fincat_to_ecat(*M, S);
    auto gs = all_functors(*L, *M);
    auto D = fin_to_efunctor(*K, *L, fs[0], A, B);
    auto E = fin_to_efunctor(*K, *L, fs[1], A, B);
    auto G = fin_to_efunctor(*L, *M, gs[0], B, C);
    auto H = fin_to_efunctor(*L, *M, gs.back(), B, C);
    for (const auto& t : all_transformations(*K, *L, fs[0], fs[1]))
        for (const auto& s : all_transformations(*L, *M, gs[0], gs.back())) {
            auto et = nat_to_etrans(*L, t, D, E);
            auto es = nat_to_etrans(*M, s, G, H);
            auto a = etrans_hcompose(es, et);
            CHECK(validate(a).ok());
            auto b = etrans_vcompose(etrans_whisker_left(H, et), etrans_whisker_right(es, D));
            CHECK(eq_trans(a, b));
        }
}

TEST_CASE("icons become transformations") {
    auto S = spans();
    auto K = FinCategory::parallel_pair();
    auto A = fincat_to_ecat(K, S);
    auto D = efun_id(A);
    CHECK(validate(D).ok());
    CHECK(validate(icon_id(D)).ok());
    auto t = icon_to_trans(icon_id(D));
    CHECK(validate(t).ok());
    CHECK(eq_trans(t, etrans_id(D)));
}

TEST_CASE("modules from profunctors validate and translate back") {
    auto S = spans();
    Corpus corpus(3);
    for (int t = 0; t < 30; ++t) {
        auto K = std::make_shared<FinCategory>(corpus.category(3, 8));
        auto L = std::make_shared<FinCategory>(corpus.category(3, 8));
        auto P = corpus.profunctor(K, L, 3);
        auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S);
        auto T = prof_to_module(P, A, B);
        CHECK(validate(T).ok());
        auto Q = module_to_prof(T, K, L);
        CHECK(Q.tgt == P.tgt);
        CHECK(Q.post == P.post);
        CHECK(Q.pre == P.pre);
    }
}

TEST_CASE("structural problems are reported, not thrown") {
    auto S = spans();
    auto A = *hat_cat(S, set_obj(2));
    A.units.clear();
    CHECK(validate(A).status == Check::STRUCTURAL);
    auto B = *hat_cat(S, set_obj(2));
    B.homs[0] = SpanBase::make(1, 1, {0}, {0});
    CHECK(validate(B).status == Check::STRUCTURAL);
}

TEST_CASE("Cat1 of spans is finite categories on small pairs") {
    auto S = spans();
    auto cats = small_categories();
    for (const auto& K : cats)
        for (const auto& L : cats) {
            auto r = cat1_equiv_check(K, L, S);
            CHECK_MESSAGE(r.ok, r.detail);
        }
}
