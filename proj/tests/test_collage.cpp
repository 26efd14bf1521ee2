#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "collagekit/bridge.hpp"
#include "collagekit/collage.hpp"
#include "collagekit/quantale.hpp"
#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

using namespace ck;

namespace {

BasePtr spans() { return std::make_shared<SpanBase>(ArityClass::FINITE); }
ModBasePtr mod_over(const BasePtr& C) { return std::make_shared<ModBase>(C, ArityClass::FINITE); }

ECatPtr one_block(const FinCategory& K, const BasePtr& S, const ModBasePtr& M) {
    return blocked(fincat_to_ecat(K, S), {0}, false, M);
}

// Picks object w of E out of hat(ext w).
EFunctor point(const ECatPtr& E, int w) {
    const Base& C = *E->base;
    EFunctor P;
    P.src = hat_cat(E->base, E->ext[w]);
    P.dst = E;
    P.obj = {w};
    P.cells = {C.id1(E->ext[w])};
    P.sq = {C.vcomp(C.runit_inv(E->hom(w, w)), C.vcomp(E->j(w), C.lunit(P.src->hom(0, 0))))};
    return P;
}

}  // namespace

TEST_CASE("discrete input: the total category is the coproduct of the extents") {
    auto S = spans();
    auto M = mod_over(S);
    std::vector<Obj> ext = {M->obj(fincat_partitioned(FinCategory::walking_arrow(), {0, 1}, S)),
                            M->obj(fincat_partitioned(FinCategory::parallel_pair(), {0, 1}, S)),
                            M->obj(fincat_to_ecat(FinCategory::terminal(), S))};
    auto input = discrete_cat(M, ext);
    REQUIRE(validate(*input).ok());
    auto r = collage(input);
    CHECK(r.total->size() == 5);
    CHECK(validate(*r.total).ok());
    CHECK(coproduct_check(r).ok());
    CHECK(certify_collage(r).ok());
    // nothing between blocks
    CHECK(SpanBase::data(r.total->hom(0, 2)).apex == 0);
    CHECK(SpanBase::data(r.total->hom(4, 0)).apex == 0);
}

TEST_CASE("collage of a cograph is the category with that module as its cross homs") {
    auto S = spans();
    auto M = mod_over(S);
    auto T = std::make_shared<FinCategory>(FinCategory::terminal());
    auto E0 = fincat_to_ecat(*T, S), E1 = fincat_to_ecat(*T, S);
    auto P = prof_to_module(prof_free(T, T, {{0, 0}, {0, 0}}), E1, E0);
    REQUIRE(validate(P).ok());
    auto input = cograph(M, E0, E1, P);
    REQUIRE(validate(*input).ok());
    auto r = collage(input);
    auto want = fincat_partitioned(FinCategory::parallel_pair(), {0, 1}, S);
    CHECK(validate(*r.total).ok());
    CHECK(SpanBase::data(r.total->hom(0, 1)).apex == 2);
    CHECK(SpanBase::data(r.total->hom(1, 0)).apex == 0);
    CHECK(same_ecat_unnamed(*r.total, *want));
    CHECK(certify_collage(r).ok());
}

TEST_CASE("flattening a blocked category gives it back") {
    auto S = spans();
    auto M = mod_over(S);
    Corpus c(5);
    for (int t = 0; t < 12; ++t) {
        auto K = c.category(4, 12);
        std::vector<int> id(K.nobj), halves(K.nobj);
        for (int a = 0; a < K.nobj; ++a) {
            id[a] = a;
            halves[a] = 2 * a < K.nobj ? 0 : 1;
        }
        auto P = fincat_partitioned(K, id, S);
        for (const auto& g : {std::vector<int>(K.nobj, 0), halves, id}) {
            auto input = blocked(P, g, false, M);
            REQUIRE(validate(*input).ok());
            CHECK(same_ecat_unnamed(*flatten(input), *P));
        }
    }
}

TEST_CASE("certified collages over spans") {
    auto S = spans();
    auto M = mod_over(S);
    Corpus c(11);
    int certified = 0;
    for (int t = 0; t < 12; ++t) {
        auto input = random_span_mod_category(c, M);
        REQUIRE(validate(*input).ok());
        auto r = collage(input);
        auto rep = certify_collage(r);
        INFO(rep.describe());
        CHECK(rep.ok());
        certified += rep.ok();
    }
    CHECK(certified == 12);
}

TEST_CASE("certified collages over Boolean relations") {
    auto Q = std::make_shared<QuantaloidBase>(Quantale::boolean());
    auto M = mod_over(Q);
    Corpus c(12);
    for (int t = 0; t < 12; ++t) {
        auto input = random_bool_mod_category(c, M);
        REQUIRE(validate(*input).ok());
        auto rep = certify_collage(collage(input));
        INFO(rep.describe());
        CHECK(rep.ok());
    }
}

TEST_CASE("a corrupted total category is rejected") {
    auto S = spans();
    auto M = mod_over(S);
    auto input = one_block(FinCategory::monoid(2, {0, 1, 1, 0}, "z2"), S, M);
    auto good = collage(input);
    REQUIRE(certify_collage(good).ok());
    auto bad = std::make_shared<ECategory>(*good.total);
    std::vector<int> m = SpanBase::fn(bad->m(0, 0, 0));
    m[0] = 1;
    bad->comps[0] = SpanBase::map(bad->comps[0].s, bad->comps[0].t, m);
    auto rep = certify_collage(collage_over(input, bad));
    INFO(rep.describe());
    CHECK(rep.verdict() == Verdict::NO);
    bool equivalence_failed = false;
    for (const auto& s : rep.stages)
        if ((s.name.rfind("equivalence", 0) == 0 || s.name.rfind("universal", 0) == 0 ||
             s.name.rfind("reverse", 0) == 0) &&
            s.verdict == Verdict::NO)
            equivalence_failed = true;
    CHECK(equivalence_failed);

    // a lawful but different category around the same input
    auto other = flatten(one_block(FinCategory::monoid(2, {0, 1, 1, 1}, "and"), S, M));
    REQUIRE(validate(*other).ok());
    auto wrong = certify_collage(collage_over(input, other));
    INFO(wrong.describe());
    CHECK(wrong.verdict() == Verdict::NO);
    CHECK(wrong.stages.front().verdict == Verdict::YES);
}

TEST_CASE("total homs are the Yoneda restrictions of the input homs") {
    auto S = spans();
    auto M = mod_over(S);
    Corpus c(21);
    for (int t = 0; t < 8; ++t) {
        auto input = random_span_mod_category(c, M);
        auto r = collage(input);
        for (int s = 0; s < r.total->size(); ++s)
            for (int u = 0; u < r.total->size(); ++u) {
                auto [x, z] = r.origin[s];
                auto [y, w] = r.origin[u];
                auto Ex = ModBase::cat(input->ext[x]), Ey = ModBase::cat(input->ext[y]);
                auto Rw = representable(point(Ey, w));
                auto Rz = corepresentable(point(Ex, z));
                auto mid = mod_compose(ModBase::mod(input->hom(x, y)), Rw).composite;
                auto all = mod_compose(Rz, mid).composite;
                CHECK(S->iso1(all.at(0, 0), r.total->hom(s, u)).has_value());
            }
    }
}

TEST_CASE("modules out of a one-object collage are algebras") {
    auto S = spans();
    auto M = mod_over(S);
    Corpus c(31);
    for (int t = 0; t < 4; ++t) {
        auto input = random_monad(c, M);
        REQUIRE(validate(*input).ok());
        auto r = collage(input);
        auto rep = kleisli_check(r, 2, 1);
        INFO(rep.describe());
        CHECK(rep.verdict() != Verdict::NO);
    }
    auto z2 = collage(one_block(FinCategory::monoid(2, {0, 1, 1, 0}, "z2"), S, M));
    auto rep = kleisli_check(z2, 4, 1);
    INFO(rep.describe());
    CHECK(rep.ok());
}

TEST_CASE("coprojections detect tightness") {
    auto S = spans();
    auto M = mod_over(S);
    auto r = collage(blocked(fincat_partitioned(FinCategory::walking_arrow(), {0, 1}, S), {0, 1}, false, M));
    auto tr = detects_tightness(r, 4, 2);
    INFO(tr.report.describe());
    CHECK(tr.report.verdict() == Verdict::YES);
    CHECK(tr.examined > 0);
    CHECK(tr.premises > 0);
    CHECK_FALSE(tr.degenerate);
    auto d = detects_tightness(r, 3, 1, true);
    CHECK(d.degenerate);
    CHECK(d.examined == 0);
}

TEST_CASE("collages survive colimit-preserving base changes") {
    auto S = spans();
    auto M = mod_over(S);
    Corpus c(41);
    for (int t = 0; t < 4; ++t) {
        auto r = collage(random_span_mod_category(c, M));
        auto a = absoluteness_probe(r, identity_morphism(S));
        INFO(a.describe());
        CHECK(a.ok());
        auto b = absoluteness_probe(r, span_to_rel(S));
        INFO(b.describe());
        CHECK(b.ok());
    }
    auto demo = metric_collage_demo(6, {{0, 2, 2, 0}, {0}}, {{0, 1, {1, 4}}});
    auto Q = demo.collage.total->base;
    auto tr = absoluteness_probe(demo.collage, minplus_truncation(Q, 3));
    INFO(tr.describe());
    CHECK(tr.ok());
    // not a quantale map: bottom is not preserved
    std::vector<int> broken(8, 0);
    auto bad = quantale_hom(Q, Q, broken);
    CHECK_FALSE(spot_check(bad).ok());
    CHECK(absoluteness_probe(demo.collage, bad).verdict() == Verdict::NO);
}

TEST_CASE("metric gluing: two points") {
    auto d = metric_collage_demo(10, {{0}, {0}}, {{0, 1, {3}}});
    CHECK(d.points == 2);
    CHECK(d.table == std::vector<int>{0, 3, 11, 0});
    CHECK(d.agrees);
    CHECK(certify_collage(d.collage).ok());
}

TEST_CASE("metric gluing: chains compose through the middle space") {
    auto d = metric_collage_demo(10, {{0}, {0}, {0}}, {{0, 1, {2}}, {1, 2, {3}}});
    CHECK(d.table[0 * 3 + 2] == 5);
    CHECK(d.agrees);
    // a direct shortcut wins
    auto e = metric_collage_demo(10, {{0}, {0}, {0}}, {{0, 1, {2}}, {1, 2, {3}}, {0, 2, {4}}});
    CHECK(e.table[0 * 3 + 2] == 4);
    CHECK(e.agrees);
    // distances beyond the cap are infinite
    auto f = metric_collage_demo(4, {{0}, {0}, {0}}, {{0, 1, {2}}, {1, 2, {3}}});
    CHECK(f.table[0 * 3 + 2] == 5);
    CHECK(f.agrees);
}

TEST_CASE("metric gluing: gluing a space to itself at distance zero") {
    std::vector<int> X = {0, 1, 3, 1, 0, 2, 3, 2, 0};
    std::vector<int> zero = {0, -1, -1, -1, 0, -1, -1, -1, 0};
    auto d = metric_collage_demo(10, {X, X}, {{0, 1, zero}});
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) CHECK(d.table[p * 6 + 3 + q] == X[p * 3 + q]);
    CHECK(d.agrees);
}

TEST_CASE("metric gluing agrees with shortest paths on seeded gluings") {
    Corpus c(2718);
    int agreed = 0;
    for (int t = 0; t < 12; ++t) {
        auto g = random_gluing(c, 10);
        auto d = metric_collage_demo(10, g.spaces, g.glue);
        CHECK(d.agrees);
        agreed += d.agrees;
    }
    CHECK(agreed == 12);
}

TEST_CASE("metric spaces reject triangle violations") {
    auto Q = std::make_shared<QuantaloidBase>(Quantale::minplus(10));
    CHECK_THROWS_AS(metric_space(Q, {0, 1, 1, 1, 0, 1, 5, 1, 0}, 3), StructuralError);
    CHECK(validate(*metric_space(Q, {0, 1, 2, 1, 0, 1, 2, 1, 0}, 3)).ok());
}

TEST_CASE("collaging a collage's hat changes nothing") {
    auto S = spans();
    auto M = mod_over(S);
    Corpus c(51);
    for (int t = 0; t < 4; ++t) {
        auto rep = idempotence_probe(random_span_mod_category(c, M));
        INFO(rep.describe());
        CHECK(rep.ok());
    }
    auto E = fincat_to_ecat(FinCategory::walking_iso(), S);
    auto input = discrete_cat(M, {M->obj(E)});
    auto rep = idempotence_probe(input);
    INFO(rep.describe());
    CHECK(rep.ok());
}

TEST_CASE("blocked rejects malformed groupings") {
    auto S = spans();
    auto M = mod_over(S);
    auto A = fincat_partitioned(FinCategory::walking_arrow(), {0, 1}, S);
    CHECK_THROWS_AS(blocked(A, {0}, false, M), StructuralError);
    CHECK_THROWS_AS(blocked(A, {0, 2}, false, M), StructuralError);
    auto M1 = std::make_shared<ModBase>(S, ArityClass::SINGLETON);
    CHECK_THROWS_AS(blocked(A, {0, 1}, false, M1), StructuralError);
    CHECK(validate(*blocked(A, {0, 0}, true, M)).ok());
}
