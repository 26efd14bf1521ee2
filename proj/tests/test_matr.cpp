#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "collagekit/bridge.hpp"
#include "collagekit/coherence.hpp"
#include "collagekit/collage.hpp"
#include "collagekit/matr.hpp"
#include "collagekit/quantale.hpp"
#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

using namespace ck;

namespace {

BasePtr spans() { return std::make_shared<SpanBase>(ArityClass::FINITE); }

}  // namespace

TEST_CASE("one-by-one matrices are the inner base") {
    auto S = spans();
    auto M = matr(S);
    std::mt19937 rng(8);
    for (int t = 0; t < 30; ++t) {
        int a = rng() % 3, b = rng() % 3, c = rng() % 3;
        auto rand_span = [&](int s, int e) {
            std::vector<int> l, r;
            if (s > 0 && e > 0)
                for (int i = 0, n = rng() % 4; i < n; ++i) {
                    l.push_back(rng() % s);
                    r.push_back(rng() % e);
                }
            return SpanBase::make(s, e, l, r);
        };
        Hom1 f = rand_span(a, b), g = rand_span(b, c);
        Obj A = M->family({set_obj(a)}), B = M->family({set_obj(b)}), C = M->family({set_obj(c)});
        Hom1 mf = M->matrix(A, B, {f}), mg = M->matrix(B, C, {g});
        Hom1 gf = M->compose1(mg, mf);
        CHECK(S->iso1(MatrBase::entry(gf, 0, 0), S->compose1(g, f)).has_value());
        CHECK(M->carrier(gf) == S->carrier(S->compose1(g, f)));
        CHECK(S->iso1(MatrBase::entry(M->id1(A), 0, 0), S->id1(set_obj(a))).has_value());
        CHECK(M->is_tight(mf) == S->is_tight(f));
    }
}

TEST_CASE("Boolean block matrices multiply like their flattenings") {
    auto Q = std::make_shared<QuantaloidBase>(Quantale::boolean());
    auto M = matr(Q);
    std::mt19937 rng(12);
    const int top = Q->quantale().top(), bot = Q->quantale().bottom();
    for (int t = 0; t < 25; ++t) {
        auto sizes = [&](int k) {
            std::vector<int> s;
            for (int i = 0; i < k; ++i) s.push_back(1 + rng() % 2);
            return s;
        };
        auto fam = [&](const std::vector<int>& s) {
            std::vector<Obj> m;
            for (int v : s) m.push_back(set_obj(v));
            return M->family(m);
        };
        std::vector<int> sa = sizes(1 + rng() % 3), sb = sizes(1 + rng() % 3), sc = sizes(1 + rng() % 3);
        auto total = [](const std::vector<int>& s) {
            int n = 0;
            for (int v : s) n += v;
            return n;
        };
        auto start = [](const std::vector<int>& s, int i) {
            int n = 0;
            for (int k = 0; k < i; ++k) n += s[k];
            return n;
        };
        // dense relation rows x cols, then cut into blocks
        auto dense = [&](int rows, int cols) {
            std::vector<int> d(rows * cols);
            for (int& v : d) v = rng() % 2;
            return d;
        };
        auto blocks = [&](const std::vector<int>& d, const std::vector<int>& src, const std::vector<int>& dst) {
            const int cols = total(src);
            std::vector<Hom1> e;
            for (std::size_t u = 0; u < dst.size(); ++u)
                for (std::size_t x = 0; x < src.size(); ++x) {
                    std::vector<int> m;
                    for (int i = 0; i < dst[u]; ++i)
                        for (int j = 0; j < src[x]; ++j)
                            m.push_back(d[(start(dst, u) + i) * cols + start(src, x) + j] ? top : bot);
                    e.push_back(Q->make(src[x], dst[u], m));
                }
            return M->matrix(fam(src), fam(dst), e);
        };
        const int na = total(sa), nb = total(sb), nc = total(sc);
        auto F = dense(nb, na), G = dense(nc, nb);
        std::vector<int> GF(nc * na, 0);
        for (int i = 0; i < nc; ++i)
            for (int k = 0; k < na; ++k)
                for (int j = 0; j < nb; ++j) GF[i * na + k] |= G[i * nb + j] & F[j * na + k];
        Hom1 got = M->compose1(blocks(G, sb, sc), blocks(F, sa, sb));
        Hom1 want = blocks(GF, sa, sc);
        CHECK(M->eq1(got, want));
    }
}

TEST_CASE("categories round trip through one-object monads on families") {
    auto S = spans();
    std::vector<ECatPtr> cats = {hat_cat(S, set_obj(2)),
                                 fincat_partitioned(FinCategory::walking_arrow(), {0, 1}, S),
                                 fincat_partitioned(FinCategory::walking_iso(), {0, 1}, S),
                                 fincat_partitioned(FinCategory::parallel_pair(), {0, 1}, S)};
    for (const auto& A : cats) {
        auto pairs = sample_module_pairs(A, 6);
        auto rep = decompose_check(A, pairs);
        INFO(rep.detail);
        CHECK(rep.ok);
        CHECK(rep.round_trip);
        CHECK(rep.pairs == static_cast<int>(pairs.size()));
        CHECK(rep.agreed == rep.pairs);
        CHECK(rep.pairs > 0);
    }
}

TEST_CASE("monad decomposition over a corpus") {
    auto S = spans();
    Corpus c(77);
    int agreed = 0, pairs = 0;
    for (int t = 0; t < 15; ++t) {
        auto K = c.category(4, 10);
        std::vector<int> g(K.nobj);
        for (int a = 0; a < K.nobj; ++a) g[a] = a;
        auto A = fincat_partitioned(K, g, S);
        auto rep = decompose_check(A, sample_module_pairs(A, 4));
        INFO(rep.detail);
        CHECK(rep.ok);
        agreed += rep.agreed;
        pairs += rep.pairs;
    }
    CHECK(agreed == pairs);
    CHECK(pairs >= 15);
}

TEST_CASE("a disjoint union becomes the concatenated family") {
    auto S = spans();
    auto M = matr(S);
    auto P0 = fincat_partitioned(FinCategory::walking_arrow(), {0, 1}, S);
    auto P1 = fincat_to_ecat(FinCategory::walking_iso(), S);
    auto U = ecat_coproduct({P0, P1});
    auto hatU = to_monad(*U, M);
    CHECK(validate(*hatU).ok());
    const auto& mem = MatrBase::members(hatU->ext[0]);
    REQUIRE(mem.size() == 3);
    CHECK(mem[0] == P0->ext[0]);
    CHECK(mem[1] == P0->ext[1]);
    CHECK(mem[2] == P1->ext[0]);
    // cross entries are empty
    CHECK(S->carrier(MatrBase::entry(hatU->hom(0, 0), 2, 0)) == 0);
    CHECK(S->carrier(MatrBase::entry(hatU->hom(0, 0), 0, 2)) == 0);

    // and it is what the collage of the discrete input produces
    auto Mod = std::make_shared<ModBase>(S, ArityClass::FINITE);
    auto r = collage(discrete_cat(Mod, {Mod->obj(P0), Mod->obj(P1)}));
    CHECK(same_ecat_unnamed(*r.total, *U));
}

TEST_CASE("tight matrices have right adjoints") {
    auto S = spans();
    auto M = matr(S);
    Obj A = M->family({set_obj(1), set_obj(2)}), B = M->family({set_obj(2), set_obj(1)});
    // column 0 tight in row 1, column 1 tight in row 0
    Hom1 f = M->matrix(A, B,
                       {S->initial(set_obj(1), set_obj(2)), SpanBase::graph(2, 2, {1, 0}),
                        SpanBase::graph(1, 1, {0}), S->initial(set_obj(2), set_obj(1))});
    CHECK(M->is_tight(f));
    auto adj = M->right_adjoint(f);
    REQUIRE(adj.has_value());
    CHECK(adjoint_triangles(*M, f, *adj));
    CHECK(M->tighten(f).has_value());

    // two tight entries in one column
    Hom1 g = M->matrix(A, B,
                       {SpanBase::graph(1, 2, {0}), SpanBase::graph(2, 2, {1, 0}), SpanBase::graph(1, 1, {0}),
                        S->initial(set_obj(2), set_obj(1))});
    CHECK_FALSE(M->is_tight(g));
    // a loose entry
    Hom1 h = M->matrix(A, B,
                       {S->initial(set_obj(1), set_obj(2)), SpanBase::make(2, 2, {0, 0}, {0, 1}),
                        SpanBase::graph(1, 1, {0}), S->initial(set_obj(2), set_obj(1))});
    CHECK_FALSE(M->is_tight(h));
}

TEST_CASE("Matr refuses a base of arity one") {
    auto S1 = std::make_shared<SpanBase>(ArityClass::SINGLETON);
    CHECK_THROWS_AS(matr(S1), StructuralError);
}
