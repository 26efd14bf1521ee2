#include "collagekit/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "collagekit/bridge.hpp"
#include "collagekit/collage.hpp"
#include "collagekit/matr.hpp"
#include "collagekit/quantale.hpp"
#include "collagekit/quantaloid.hpp"
#include "collagekit/span.hpp"

namespace ck {

std::string to_string(Scale s) { return s == Scale::SMOKE ? "smoke" : "full"; }

Scale parse_scale(const std::string& s) {
    if (s == "smoke") return Scale::SMOKE;
    if (s == "full") return Scale::FULL;
    throw StructuralError("unknown scale " + s + " (expected smoke or full)");
}

unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COLLAGEKIT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 64L));
    }
    return std::min(hw, 64u);
}

void parallel_for(int n, unsigned threads, const std::function<void(int)>& f) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const unsigned k = std::min<unsigned>(threads, static_cast<unsigned>(n));
    for (unsigned t = 0; t < k; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

Verdict SuiteResult::verdict() const {
    bool unknown = false;
    for (const auto* list : {&properties, &criteria})
        for (const auto& o : *list) {
            if (o.verdict == Verdict::NO) return Verdict::NO;
            unknown = unknown || o.verdict == Verdict::UNKNOWN;
        }
    return unknown ? Verdict::UNKNOWN : Verdict::YES;
}

namespace {

Json outcomes_json(const std::vector<Outcome>& list) {
    Json out = Json::array();
    for (const auto& o : list)
        out.push_back({{"id", o.id}, {"name", o.name}, {"verdict", to_string(o.verdict)}, {"detail", o.detail}});
    return out;
}

}  // namespace

Json SuiteResult::json() const {
    return {{"tool", "collagekit"},
            {"version", kToolVersion},
            {"seed", options.seed},
            {"scale", to_string(options.scale)},
            {"caps", {{"enumeration", options.cap}, {"metric", options.metric_cap}}},
            {"properties", outcomes_json(properties)},
            {"criteria", outcomes_json(criteria)},
            {"verdict", to_string(verdict())}};
}

std::string SuiteResult::summary() const {
    std::ostringstream os;
    for (const auto* list : {&properties, &criteria})
        for (const auto& o : *list) os << to_string(o.verdict) << "  " << o.id << "  " << o.name << "  (" << o.detail << ")\n";
    os << "overall: " << to_string(verdict()) << "\n";
    return os.str();
}

namespace {

// One corpus item's result.
struct Item {
    Verdict v = Verdict::YES;
    std::string problem;
    long count = 0;  // item-specific tally folded into the detail

    void fail(std::string why) {
        if (v != Verdict::NO) problem = std::move(why);
        v = Verdict::NO;
    }
    void unsure(std::string why) {
        if (v == Verdict::YES) {
            v = Verdict::UNKNOWN;
            problem = std::move(why);
        }
    }
    void merge(const Report& r) {
        if (r.verdict() == Verdict::NO) fail(r.first_problem());
        else if (r.verdict() == Verdict::UNKNOWN) unsure(r.first_problem());
    }
};

struct Ctx {
    SuiteOptions o;
    unsigned threads;
    bool full() const { return o.scale == Scale::FULL; }
    int pick(int smoke, int full_n) const { return full() ? full_n : smoke; }
    std::uint64_t seed(int stream, int i) const {
        return o.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(stream) * 1000003ULL + static_cast<std::uint64_t>(i);
    }
};

// Runs n items in parallel, each guarded, and folds them into one outcome.
Outcome fold(const Ctx& ctx, std::string id, std::string name, int n, const std::string& unit,
             const std::function<void(int, Item&)>& body) {
    std::vector<Item> items(n);
    parallel_for(n, ctx.threads, [&](int i) {
        try {
            body(i, items[i]);
        } catch (const std::exception& e) {
            items[i].fail(std::string("exception: ") + e.what());
        }
    });
    Outcome out{std::move(id), std::move(name), Verdict::YES, {}};
    int passed = 0;
    long total = 0;
    std::string first;
    for (int i = 0; i < n; ++i) {
        total += items[i].count;
        if (items[i].v == Verdict::YES) ++passed;
        if (items[i].v == Verdict::NO && out.verdict != Verdict::NO) {
            out.verdict = Verdict::NO;
            first = "item " + std::to_string(i) + ": " + items[i].problem;
        } else if (items[i].v == Verdict::UNKNOWN && out.verdict == Verdict::YES) {
            out.verdict = Verdict::UNKNOWN;
            first = "item " + std::to_string(i) + ": " + items[i].problem;
        }
    }
    out.detail = std::to_string(passed) + "/" + std::to_string(n) + " " + unit;
    if (total > 0) out.detail += ", " + std::to_string(total) + " checks";
    if (!first.empty()) out.detail += "; " + first;
    return out;
}

Outcome combine(std::string id, std::string name, const std::vector<Outcome>& parts) {
    Outcome out{std::move(id), std::move(name), Verdict::YES, {}};
    for (const auto& p : parts) {
        if (p.verdict == Verdict::NO) out.verdict = Verdict::NO;
        else if (p.verdict == Verdict::UNKNOWN && out.verdict == Verdict::YES) out.verdict = Verdict::UNKNOWN;
        if (!out.detail.empty()) out.detail += " | ";
        out.detail += p.name + ": " + p.detail;
    }
    return out;
}

BasePtr spans(ArityClass a = ArityClass::FINITE) { return std::make_shared<SpanBase>(a); }
BasePtr booleans() { return std::make_shared<QuantaloidBase>(Quantale::boolean()); }
ModBasePtr mod_over(const BasePtr& C) { return std::make_shared<ModBase>(C, ArityClass::FINITE); }

// Pentagon, triangle and invertibility of the constraint cells.
bool coherent(const Base& B, const Hom1& f, const Hom1& g, const Hom1& h, const Hom1& k) {
    Hom2 lhs = B.vcomp(B.assoc(k, h, B.compose1(g, f)), B.assoc(B.compose1(k, h), g, f));
    Hom2 rhs = B.vcomp(B.whisker_left(k, B.assoc(h, g, f)),
                       B.vcomp(B.assoc(k, B.compose1(h, g), f), B.whisker_right(B.assoc(k, h, g), f)));
    if (!B.eq2(lhs, rhs)) return false;
    Hom2 tl = B.vcomp(B.whisker_left(g, B.lunit(f)), B.assoc(g, B.id1(f.dst), f));
    if (!B.eq2(tl, B.whisker_right(B.runit(g), f))) return false;
    if (!B.eq2(B.vcomp(B.assoc_inv(h, g, f), B.assoc(h, g, f)), B.id2(B.compose1(B.compose1(h, g), f)))) return false;
    if (!B.eq2(B.vcomp(B.assoc(h, g, f), B.assoc_inv(h, g, f)), B.id2(B.compose1(h, B.compose1(g, f))))) return false;
    if (!B.eq2(B.vcomp(B.lunit(f), B.lunit_inv(f)), B.id2(f))) return false;
    if (!B.eq2(B.vcomp(B.lunit_inv(f), B.lunit(f)), B.id2(B.compose1(B.id1(f.dst), f)))) return false;
    if (!B.eq2(B.vcomp(B.runit(f), B.runit_inv(f)), B.id2(f))) return false;
    return B.eq2(B.vcomp(B.runit_inv(f), B.runit(f)), B.id2(B.compose1(f, B.id1(f.src))));
}

Hom1 random_bool_module(Corpus& c, const ModBase& M, const ECatPtr& X, const ECatPtr& Y) {
    const auto& Q = dynamic_cast<const QuantaloidBase&>(*M.inner());
    EModule T = EModule::shape(X, Y);
    for (auto& h : T.comps) h = Q.make(1, 1, {c.uniform(0, 1)});
    const int nx = X->size(), ny = Y->size();
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < nx; ++y)
            for (int u = 0; u < ny; ++u)
                T.racts[(x * nx + y) * ny + u] = Q.token(Q.compose1(T.at(u, x), X->hom(x, y)), T.at(u, y));
    for (int x = 0; x < nx; ++x)
        for (int u = 0; u < ny; ++u)
            for (int v = 0; v < ny; ++v)
                T.lacts[(x * ny + u) * ny + v] = Q.token(Q.compose1(Y->hom(u, v), T.at(v, x)), T.at(u, x));
    return M.wrap(T);
}

Hom1 random_span_hom(Corpus& c, int a, int b, int max_apex) {
    std::vector<int> l, r;
    if (a > 0 && b > 0)
        for (int i = 0, n = c.uniform(0, max_apex); i < n; ++i) {
            l.push_back(c.uniform(0, a - 1));
            r.push_back(c.uniform(0, b - 1));
        }
    return SpanBase::make(a, b, l, r);
}

std::vector<FinCatPtr> named_categories() {
    std::vector<FinCatPtr> out;
    for (auto K : {FinCategory::terminal(), FinCategory::discrete(2), FinCategory::walking_arrow(),
                   FinCategory::walking_iso(), FinCategory::parallel_pair(),
                   FinCategory::monoid(2, {0, 1, 1, 0}, "z2"), FinCategory::monoid(2, {0, 1, 1, 1}, "and")})
        out.push_back(std::make_shared<FinCategory>(K));
    return out;
}

// Corpus input for item i: span-based for even i, Boolean for odd i.
ECatPtr corpus_input(const Ctx& ctx, int stream, int i) {
    Corpus c(ctx.seed(stream, i));
    if (i % 2 == 0) return random_span_mod_category(c, mod_over(spans()));
    return random_bool_mod_category(c, mod_over(booleans()));
}

// ---- acceptance criteria ----

Outcome a1(const Ctx& ctx) {
    return fold(ctx, "1", "composition agrees with the coend oracle", ctx.pick(50, 200), "triples agree",
                [&](int i, Item& it) {
                    Corpus c(ctx.seed(1, i));
                    auto S = spans(ArityClass::SINGLETON);
                    auto K = std::make_shared<FinCategory>(c.category(4, 12));
                    auto L = std::make_shared<FinCategory>(c.category(4, 12));
                    auto N = std::make_shared<FinCategory>(c.category(4, 12));
                    auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S), C = fincat_to_ecat(*N, S);
                    auto P = c.profunctor(K, L, 4), R = c.profunctor(L, N, 4);
                    auto w = mod_compose(prof_to_module(R, B, C), prof_to_module(P, A, B));
                    if (!validate(w.composite).ok()) return it.fail("composite is not a module");
                    auto got = module_to_prof(w.composite, K, N);
                    if (!prof_iso(got, prof_compose_coend(R, P))) return it.fail("no bijection with the coend");
                    it.count = 1;
                });
}

Outcome a2(const Ctx& ctx) {
    const int n = ctx.pick(20, 60);
    Outcome sp = fold(ctx, "2s", "Mod over spans", n, "quadruples coherent", [&](int i, Item& it) {
        Corpus c(ctx.seed(2, i));
        auto S = spans(ArityClass::SINGLETON);
        auto M = mod_over(S);
        auto K = std::make_shared<FinCategory>(c.category(3, 6));
        auto L = std::make_shared<FinCategory>(c.category(3, 6));
        auto A = fincat_to_ecat(*K, S), B = fincat_to_ecat(*L, S);
        Hom1 f = M->wrap(prof_to_module(c.profunctor(K, L, 2), A, B));
        Hom1 g = M->wrap(prof_to_module(c.profunctor(L, L, 2), B, B));
        Hom1 h = M->wrap(prof_to_module(c.profunctor(L, K, 2), B, A));
        Hom1 k = M->wrap(prof_to_module(c.profunctor(K, K, 2), A, A));
        if (!coherent(*M, f, g, h, k)) it.fail("coherence failed");
        it.count = 1;
    });
    Outcome bo = fold(ctx, "2b", "Mod over Boolean matrices", n, "quadruples coherent", [&](int i, Item& it) {
        Corpus c(ctx.seed(3, i));
        auto Q = booleans();
        auto M = mod_over(Q);
        auto A = discrete_cat(Q, std::vector<Obj>(c.uniform(1, 3), set_obj(1)));
        auto B = discrete_cat(Q, std::vector<Obj>(c.uniform(1, 3), set_obj(1)));
        Hom1 f = random_bool_module(c, *M, A, B), g = random_bool_module(c, *M, B, B);
        Hom1 h = random_bool_module(c, *M, B, A), k = random_bool_module(c, *M, A, A);
        if (!coherent(*M, f, g, h, k)) it.fail("coherence failed");
        it.count = 1;
    });
    return combine("2", "bicategory laws of modules", {sp, bo});
}

Outcome a3(const Ctx& ctx) {
    const int cap = ctx.pick(3, 4);
    auto S = spans();
    // every composable pair of enumerated spans between sets of size <= 2
    std::vector<std::tuple<int, int, int>> shapes;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int d = 0; d <= 2; ++d) shapes.emplace_back(a, b, d);
    Outcome all = fold(ctx, "3a", "all pairs up to apex " + std::to_string(cap), static_cast<int>(shapes.size()),
                       "shapes", [&](int i, Item& it) {
                           auto [a, b, d] = shapes[i];
                           auto Sb = spans();
                           auto fs = Sb->enumerate1(set_obj(a), set_obj(b), cap).items;
                           auto gs = Sb->enumerate1(set_obj(b), set_obj(d), cap).items;
                           for (const auto& f : fs)
                               for (const auto& g : gs) {
                                   auto hf = hat_loose(Sb, f);
                                   auto hg = hat_loose(Sb, g);
                                   hg.src = hf.dst;
                                   auto w = mod_compose(hg, hf);
                                   auto hgf = hat_loose(Sb, Sb->compose1(g, f));
                                   hgf.src = hf.src;
                                   hgf.dst = hg.dst;
                                   if (!module_iso(w.composite, hgf).iso)
                                       return it.fail("hat does not preserve " + Sb->show1(g) + " . " + Sb->show1(f));
                                   ++it.count;
                               }
                           for (const auto& f : fs)
                               for (const auto& f2 : fs) {
                                   auto hf = hat_loose(Sb, f), hf2 = hat_loose(Sb, f2);
                                   hf2.src = hf.src;
                                   hf2.dst = hf.dst;
                                   auto cells = enumerate_modcells(hf, hf2, 100000);
                                   auto base_cells = Sb->enumerate2(f, f2, 100000);
                                   if (!cells.complete || !base_cells.complete) return it.unsure("cell enumeration cut off");
                                   if (cells.items.size() != base_cells.items.size())
                                       return it.fail("2-cell counts differ for " + Sb->show1(f));
                                   ++it.count;
                               }
                       });
    Outcome sampled = fold(ctx, "3b", "random pairs up to apex 4", ctx.pick(40, 200), "pairs", [&](int i, Item& it) {
        Corpus c(ctx.seed(4, i));
        auto Sb = spans();
        int a = c.uniform(0, 3), b = c.uniform(0, 3), d = c.uniform(0, 3);
        Hom1 f = random_span_hom(c, a, b, 4), g = random_span_hom(c, b, d, 4);
        auto hf = hat_loose(Sb, f);
        auto hg = hat_loose(Sb, g);
        hg.src = hf.dst;
        auto w = mod_compose(hg, hf);
        auto hgf = hat_loose(Sb, Sb->compose1(g, f));
        hgf.src = hf.src;
        hgf.dst = hg.dst;
        if (!module_iso(w.composite, hgf).iso) return it.fail("hat does not preserve composition");
        it.count = 1;
    });
    (void)S;
    return combine("3", "hat is a locally fully faithful pseudofunctor", {all, sampled});
}

Outcome a4(const Ctx& ctx) {
    auto named = named_categories();
    std::vector<std::pair<FinCatPtr, FinCatPtr>> pairs;
    for (const auto& K : named)
        for (const auto& L : named) pairs.emplace_back(K, L);
    Corpus c(ctx.seed(5, 0));
    for (int i = 0, n = ctx.pick(10, 40); i < n; ++i) {
        auto K = std::make_shared<FinCategory>(c.category(4, 12));
        auto L = std::make_shared<FinCategory>(c.category(4, 12));
        pairs.emplace_back(K, L);
    }
    return fold(ctx, "4", "internal categories in spans are finite categories", static_cast<int>(pairs.size()),
                "pairs biject", [&](int i, Item& it) {
                    auto r = cat1_equiv_check(pairs[i].first, pairs[i].second, spans(ArityClass::SINGLETON));
                    if (!r.ok) return it.fail(r.detail);
                    it.count = r.functors + r.transformations;
                });
}

Outcome a5(const Ctx& ctx) {
    Outcome corpus = fold(ctx, "5c", "corpus", ctx.pick(24, 120), "collages certified", [&](int i, Item& it) {
        auto input = corpus_input(ctx, 6, i);
        Check v = validate(*input);
        if (!v.ok()) return it.fail("corpus input invalid: " + v.describe());
        it.merge(certify_collage(collage(input)));
        it.count = 1;
    });
    Outcome control = fold(ctx, "5n", "negative controls", 2, "rejected", [&](int i, Item& it) {
        auto S = spans();
        auto M = mod_over(S);
        auto input = blocked(fincat_to_ecat(FinCategory::monoid(2, {0, 1, 1, 0}, "z2"), S), {0}, false, M);
        auto good = collage(input);
        ECatPtr wrong;
        if (i == 0) {
            auto bad = std::make_shared<ECategory>(*good.total);
            std::vector<int> m = SpanBase::fn(bad->m(0, 0, 0));
            m[0] = 1;
            bad->comps[0] = SpanBase::map(bad->comps[0].s, bad->comps[0].t, m);
            wrong = bad;
        } else {
            wrong = flatten(blocked(fincat_to_ecat(FinCategory::monoid(2, {0, 1, 1, 1}, "and"), S), {0}, false, M));
        }
        Report rep = certify_collage(collage_over(input, wrong));
        bool universal_failed = false;
        for (const auto& s : rep.stages)
            if ((s.name.rfind("universal", 0) == 0 || s.name.rfind("reverse", 0) == 0 ||
                 s.name.rfind("equivalence", 0) == 0) &&
                s.verdict == Verdict::NO)
                universal_failed = true;
        if (!universal_failed) it.fail("mutated total category was certified");
        it.count = 1;
    });
    return combine("5", "collage certification", {corpus, control});
}

Outcome a6(const Ctx& ctx) {
    Outcome coprod = fold(ctx, "6c", "discrete inputs", ctx.pick(8, 30), "coproducts", [&](int i, Item& it) {
        Corpus c(ctx.seed(7, i));
        auto S = spans();
        auto M = mod_over(S);
        std::vector<Obj> ext;
        for (int p = 0, n = c.uniform(1, 3); p < n; ++p) {
            auto K = c.category(3, 8);
            std::vector<int> g(K.nobj);
            for (int a = 0; a < K.nobj; ++a) g[a] = a;
            ext.push_back(M->obj(fincat_partitioned(K, g, S)));
        }
        auto r = collage(discrete_cat(M, ext));
        it.merge(coproduct_check(r));
        it.merge(certify_collage(r));
        it.count = 1;
    });
    Outcome kleisli = fold(ctx, "6k", "one-object inputs at cap " + std::to_string(ctx.o.cap), ctx.pick(7, 25),
                           "universal properties", [&](int i, Item& it) {
                               ECatPtr input;
                               if (i == 0) {
                                   auto S = spans();
                                   input = blocked(fincat_to_ecat(FinCategory::monoid(2, {0, 1, 1, 0}, "z2"), S), {0},
                                                   false, mod_over(S));
                               } else {
                                   Corpus c(ctx.seed(8, i));
                                   input = i % 2 ? random_monad(c, mod_over(spans())) : random_monad(c, mod_over(booleans()));
                               }
                               it.merge(kleisli_check(collage(input), ctx.o.cap, 1));
                               it.count = 1;
                           });
    return combine("6", "coproducts and Kleisli objects", {coprod, kleisli});
}

Outcome a7(const Ctx& ctx) {
    return fold(ctx, "7", "matrix decomposition", ctx.pick(15, 60), "categories decompose", [&](int i, Item& it) {
        Corpus c(ctx.seed(9, i));
        auto S = spans();
        auto K = c.category(4, 10);
        std::vector<int> g(K.nobj);
        for (int a = 0; a < K.nobj; ++a) g[a] = a;
        auto A = fincat_partitioned(K, g, S);
        auto rep = decompose_check(A, sample_module_pairs(A, 4));
        if (!rep.ok || !rep.round_trip || rep.agreed != rep.pairs) return it.fail(rep.detail);
        it.count = rep.pairs;
    });
}

Outcome a8(const Ctx& ctx) {
    return fold(ctx, "8", "collages in Mod", ctx.pick(16, 80), "inputs", [&](int i, Item& it) {
        it.merge(idempotence_probe(corpus_input(ctx, 10, i)));
        it.count = 1;
    });
}

Outcome a9(const Ctx& ctx) {
    return fold(ctx, "9", "tightness at cap " + std::to_string(ctx.o.cap), ctx.pick(24, 120), "collages",
                [&](int i, Item& it) {
                    auto r = collage(corpus_input(ctx, 6, i));
                    auto t = detects_tightness(r, ctx.o.cap, 1);
                    it.merge(t.report);
                    it.count = t.examined;
                });
}

Outcome a10(const Ctx& ctx) {
    Outcome ident = fold(ctx, "10i", "identity", ctx.pick(12, 60), "collages", [&](int i, Item& it) {
        auto r = collage(corpus_input(ctx, 6, i));
        it.merge(absoluteness_probe(r, identity_morphism(mod_base_of(*r.input).inner())));
        it.count = 1;
    });
    Outcome rel = fold(ctx, "10r", "spans to relations", ctx.pick(12, 60), "collages", [&](int i, Item& it) {
        auto r = collage(corpus_input(ctx, 6, 2 * i));
        it.merge(absoluteness_probe(r, span_to_rel(mod_base_of(*r.input).inner())));
        it.count = 1;
    });
    Outcome trunc = fold(ctx, "10t", "distance truncation", ctx.pick(6, 30), "collages", [&](int i, Item& it) {
        Corpus c(ctx.seed(11, i));
        auto g = random_gluing(c, ctx.o.metric_cap);
        auto d = metric_collage_demo(ctx.o.metric_cap, g.spaces, g.glue);
        it.merge(absoluteness_probe(d.collage, minplus_truncation(d.collage.total->base, ctx.o.metric_cap / 2)));
        it.count = 1;
    });
    return combine("10", "absoluteness under base morphisms", {ident, rel, trunc});
}

Outcome a11(const Ctx& ctx) {
    return fold(ctx, "11", "metric gluing at cap " + std::to_string(ctx.o.metric_cap), ctx.pick(12, 50),
                "tables match shortest paths", [&](int i, Item& it) {
                    Corpus c(ctx.seed(12, i));
                    auto g = random_gluing(c, ctx.o.metric_cap);
                    auto d = metric_collage_demo(ctx.o.metric_cap, g.spaces, g.glue);
                    if (!d.agrees) return it.fail("distance table differs from shortest paths");
                    it.count = d.points * d.points;
                });
}

std::vector<Outcome> criteria_1_to_11(const Ctx& ctx) {
    std::vector<Outcome> out;
    for (auto f : {a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11}) out.push_back(f(ctx));
    return out;
}

// ---- per-module properties ----

std::vector<Outcome> properties(const Ctx& ctx) {
    std::vector<Outcome> out;
    out.push_back(fold(ctx, "P.base", "whiskering preserves coequalizers and coproducts", ctx.pick(40, 200), "spans",
                       [&](int i, Item& it) {
                           Corpus c(ctx.seed(20, i));
                           SpanBase S;
                           Hom1 p = random_span_hom(c, 2, 2, 2);
                           Hom1 q = S.coproduct({p, random_span_hom(c, 2, 2, 2), p}, p.src, p.dst).sum;
                           Hom1 k = random_span_hom(c, 2, 2, 3);
                           auto sum = S.coproduct({p, q}, p.src, p.dst);
                           auto ks = S.coproduct({S.compose1(k, p), S.compose1(k, q)}, p.src, k.dst);
                           if (!S.iso1(S.compose1(k, sum.sum), ks.sum)) return it.fail("coproduct not preserved");
                           auto maps = S.enumerate2(p, q, 64).items;
                           if (maps.size() >= 2) {
                               auto cq = S.refl_coequalizer(maps.front(), maps.back());
                               auto ckq = S.refl_coequalizer(S.whisker_left(k, maps.front()), S.whisker_left(k, maps.back()));
                               if (!S.iso1(S.compose1(k, cq.obj), ckq.obj)) return it.fail("coequalizer not preserved");
                           }
                           it.count = 1;
                       }));
    out.push_back(fold(ctx, "P.enriched", "internal categories validate and round trip", ctx.pick(30, 120),
                       "categories", [&](int i, Item& it) {
                           Corpus c(ctx.seed(21, i));
                           auto K = c.category(4, 12);
                           auto A = fincat_to_ecat(K, spans(ArityClass::SINGLETON));
                           if (!validate(*A).ok()) return it.fail("invalid internal category");
                           if (!(ecat_to_fincat(*A) == K)) return it.fail("round trip changed " + K.name);
                           it.count = 1;
                       }));
    out.push_back(fold(ctx, "P.oracle", "identity profunctor is a unit for coend composition", ctx.pick(30, 120),
                       "profunctors", [&](int i, Item& it) {
                           Corpus c(ctx.seed(22, i));
                           auto K = std::make_shared<FinCategory>(c.category(4, 12));
                           auto L = std::make_shared<FinCategory>(c.category(4, 12));
                           auto P = c.profunctor(K, L, 4);
                           if (!prof_iso(prof_compose_coend(prof_hom(L), P), P)) return it.fail("left unit");
                           if (!prof_iso(prof_compose_coend(P, prof_hom(K)), P)) return it.fail("right unit");
                           it.count = 1;
                       }));
    out.push_back(fold(ctx, "P.modcat", "representables are maps", ctx.pick(20, 80), "functors",
                       [&](int i, Item& it) {
                           Corpus c(ctx.seed(23, i));
                           auto S = spans(ArityClass::SINGLETON);
                           auto K = std::make_shared<FinCategory>(c.category(3, 8));
                           auto L = std::make_shared<FinCategory>(c.category(3, 8));
                           auto F = c.functor(*K, *L);
                           auto D = fin_to_efunctor(*K, *L, F, fincat_to_ecat(*K, S), fincat_to_ecat(*L, S));
                           if (!adjunction_check(representable_adjunction(D))) return it.fail("triangle identities fail");
                           it.count = 1;
                       }));
    out.push_back(fold(ctx, "P.collage", "flattening a blocked category recovers it", ctx.pick(20, 80), "categories",
                       [&](int i, Item& it) {
                           Corpus c(ctx.seed(24, i));
                           auto S = spans();
                           auto K = c.category(4, 12);
                           std::vector<int> id(K.nobj), halves(K.nobj);
                           for (int a = 0; a < K.nobj; ++a) {
                               id[a] = a;
                               halves[a] = 2 * a < K.nobj ? 0 : 1;
                           }
                           auto P = fincat_partitioned(K, id, S);
                           if (!same_ecat_unnamed(*flatten(blocked(P, halves, false, mod_over(S))), *P))
                               return it.fail("flatten changed " + K.name);
                           it.count = 1;
                       }));
    out.push_back(fold(ctx, "P.matr", "one-by-one matrices compose like the base", ctx.pick(30, 120), "pairs",
                       [&](int i, Item& it) {
                           Corpus c(ctx.seed(25, i));
                           auto S = spans();
                           auto M = matr(S);
                           int a = c.uniform(0, 2), b = c.uniform(0, 2), d = c.uniform(0, 2);
                           Hom1 f = random_span_hom(c, a, b, 3), g = random_span_hom(c, b, d, 3);
                           Obj A = M->family({set_obj(a)}), B = M->family({set_obj(b)}), D = M->family({set_obj(d)});
                           Hom1 gf = M->compose1(M->matrix(B, D, {g}), M->matrix(A, B, {f}));
                           if (!S->iso1(MatrBase::entry(gf, 0, 0), S->compose1(g, f))) return it.fail("entry differs");
                           it.count = 1;
                       }));
    out.push_back(fold(ctx, "P.cli", "documents reload to equal values", ctx.pick(16, 60), "inputs",
                       [&](int i, Item& it) {
                           auto input = corpus_input(ctx, 26, i);
                           auto back = decode_mod_category(parse_document(
                               canonical_dump(make_document("mod-enriched-category", encode_mod_category(*input)))));
                           if (!same_value(*input, *back)) return it.fail("mod-enriched category changed");
                           auto r = collage(input);
                           auto total = decode_ecategory(
                               parse_document(canonical_dump(make_document("ecategory", encode_ecategory(*r.total)))));
                           if (!same_value(*r.total, *total)) return it.fail("total category changed");
                           auto col = column_module(r, 0);
                           auto colback = decode_emodule(
                               parse_document(canonical_dump(make_document("emodule", encode_emodule(col)))));
                           if (!same_value(col, colback)) return it.fail("module changed");
                           it.count = 3;
                       }));
    return out;
}

}  // namespace

SuiteResult run_acceptance(const SuiteOptions& o) {
    Ctx ctx{o, o.threads ? o.threads : thread_count()};
    SuiteResult r;
    r.options = o;
    r.criteria = criteria_1_to_11(ctx);

    // Rerun single-threaded when the first run was parallel, so ordering
    // effects would show up as a difference.
    Ctx again = ctx;
    again.threads = ctx.threads > 1 ? 1 : 2;
    SuiteResult r2;
    r2.options = o;
    r2.criteria = criteria_1_to_11(again);
    const std::string a = canonical_dump(r.json()), b = canonical_dump(r2.json());
    Outcome det{"12", "determinism", a == b ? Verdict::YES : Verdict::NO,
                a == b ? "two runs produced identical " + std::to_string(a.size()) + "-byte reports"
                       : "reports differ between runs"};
    r.criteria.push_back(det);
    return r;
}

SuiteResult run_suite(const SuiteOptions& o) {
    Ctx ctx{o, o.threads ? o.threads : thread_count()};
    SuiteResult r = run_acceptance(o);
    r.properties = properties(ctx);
    return r;
}

}  // namespace ck
