#include "collagekit/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace ck {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::vector<int> FinCategory::hom(int a, int b) const {
    std::vector<int> out;
    for (int f = 0; f < nmor(); ++f)
        if (dom[f] == a && cod[f] == b) out.push_back(f);
    return out;
}

void FinCategory::check() const {
    const int m = nmor();
    need(static_cast<int>(cod.size()) == m, name + ": dom/cod length mismatch");
    need(static_cast<int>(ident.size()) == nobj, name + ": identity table has wrong length");
    need(static_cast<int>(table.size()) == m * m, name + ": composition table has wrong size");
    for (int f = 0; f < m; ++f)
        need(dom[f] >= 0 && dom[f] < nobj && cod[f] >= 0 && cod[f] < nobj, name + ": morphism endpoint out of range");
    for (int o = 0; o < nobj; ++o) {
        int i = ident[o];
        need(i >= 0 && i < m && dom[i] == o && cod[i] == o, name + ": bad identity");
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            int h = compose(g, f);
            if (cod[f] != dom[g]) {
                need(h == -1, name + ": composite of non-composable pair");
                continue;
            }
            need(h >= 0 && h < m && dom[h] == dom[f] && cod[h] == cod[g], name + ": composite has wrong boundary");
        }
    for (int f = 0; f < m; ++f) {
        need(compose(ident[cod[f]], f) == f && compose(f, ident[dom[f]]) == f, name + ": unit law fails");
        for (int g = 0; g < m; ++g) {
            if (cod[f] != dom[g]) continue;
            for (int h = 0; h < m; ++h)
                if (cod[g] == dom[h])
                    need(compose(h, compose(g, f)) == compose(compose(h, g), f), name + ": composition not associative");
        }
    }
}

FinCategory FinCategory::make(std::string name, int nobj, std::vector<std::pair<int, int>> mors,
                              std::vector<int> ident, const std::vector<int>& table) {
    FinCategory K;
    K.name = std::move(name);
    K.nobj = nobj;
    for (auto [d, c] : mors) {
        K.dom.push_back(d);
        K.cod.push_back(c);
    }
    K.ident = std::move(ident);
    K.table = table;
    K.check();
    return K;
}

FinCategory FinCategory::preorder(int n, const std::vector<bool>& le, std::string name) {
    need(static_cast<int>(le.size()) == n * n, "preorder: relation has wrong size");
    FinCategory K;
    K.name = std::move(name);
    K.nobj = n;
    std::vector<int> idx(n * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (le[a * n + b]) {
                idx[a * n + b] = K.nmor();
                K.dom.push_back(a);
                K.cod.push_back(b);
            }
    for (int a = 0; a < n; ++a) K.ident.push_back(idx[a * n + a]);
    const int m = K.nmor();
    K.table.assign(m * m, -1);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (K.cod[f] == K.dom[g]) K.table[g * m + f] = idx[K.dom[f] * n + K.cod[g]];
    K.check();
    return K;
}

FinCategory FinCategory::discrete(int n) {
    std::vector<bool> le(n * n, false);
    for (int a = 0; a < n; ++a) le[a * n + a] = true;
    return preorder(n, le, "discrete(" + std::to_string(n) + ")");
}

FinCategory FinCategory::terminal() {
    auto K = discrete(1);
    K.name = "terminal";
    return K;
}

FinCategory FinCategory::walking_arrow() { return preorder(2, {true, true, false, true}, "arrow"); }

FinCategory FinCategory::walking_iso() { return preorder(2, {true, true, true, true}, "iso"); }

FinCategory FinCategory::parallel_pair() { return free_dag(2, {{0, 1}, {0, 1}}, "parallel"); }

FinCategory FinCategory::free_dag(int n, const std::vector<std::pair<int, int>>& edges, std::string name) {
    // Paths as (start, edge list), generated by length.
    std::vector<std::pair<int, std::vector<int>>> paths;
    for (int o = 0; o < n; ++o) paths.push_back({o, {}});
    std::size_t frontier = 0;
    while (frontier < paths.size()) {
        std::size_t end = paths.size();
        for (std::size_t p = frontier; p < end; ++p) {
            auto [start, es] = paths[p];
            int at = es.empty() ? start : edges[es.back()].second;
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (edges[e].first == at) {
                    auto nx = es;
                    nx.push_back(static_cast<int>(e));
                    paths.push_back({start, nx});
                    need(paths.size() < 4096, name + ": graph has cycles or too many paths");
                }
        }
        frontier = end;
    }
    std::map<std::pair<int, std::vector<int>>, int> index;
    FinCategory K;
    K.name = std::move(name);
    K.nobj = n;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        index[paths[p]] = static_cast<int>(p);
        const auto& [start, es] = paths[p];
        K.dom.push_back(start);
        K.cod.push_back(es.empty() ? start : edges[es.back()].second);
    }
    for (int o = 0; o < n; ++o) K.ident.push_back(o);
    const int m = K.nmor();
    K.table.assign(m * m, -1);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            if (K.cod[f] != K.dom[g]) continue;
            auto es = paths[f].second;
            es.insert(es.end(), paths[g].second.begin(), paths[g].second.end());
            K.table[g * m + f] = index.at({K.dom[f], es});
        }
    K.check();
    return K;
}

FinCategory FinCategory::monoid(int n, const std::vector<int>& mult, std::string name) {
    FinCategory K;
    K.name = std::move(name);
    K.nobj = 1;
    K.dom.assign(n, 0);
    K.cod.assign(n, 0);
    K.ident = {0};
    K.table = mult;
    K.check();
    return K;
}

bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.nobj == b.nobj && a.dom == b.dom && a.cod == b.cod && a.ident == b.ident && a.table == b.table;
}

bool is_functor(const FinCategory& K, const FinCategory& L, const FinFunctor& F) {
    if (static_cast<int>(F.obj.size()) != K.nobj || static_cast<int>(F.mor.size()) != K.nmor()) return false;
    for (int o : F.obj)
        if (o < 0 || o >= L.nobj) return false;
    for (int f = 0; f < K.nmor(); ++f) {
        int g = F.mor[f];
        if (g < 0 || g >= L.nmor() || L.dom[g] != F.obj[K.dom[f]] || L.cod[g] != F.obj[K.cod[f]]) return false;
    }
    for (int o = 0; o < K.nobj; ++o)
        if (F.mor[K.ident[o]] != L.ident[F.obj[o]]) return false;
    for (int g = 0; g < K.nmor(); ++g)
        for (int f = 0; f < K.nmor(); ++f)
            if (K.cod[f] == K.dom[g] && F.mor[K.compose(g, f)] != L.compose(F.mor[g], F.mor[f])) return false;
    return true;
}

bool is_natural(const FinCategory& K, const FinCategory& L, const FinFunctor& F, const FinFunctor& G,
                const NatTransf& t) {
    if (static_cast<int>(t.comp.size()) != K.nobj) return false;
    for (int x = 0; x < K.nobj; ++x) {
        int c = t.comp[x];
        if (c < 0 || c >= L.nmor() || L.dom[c] != F.obj[x] || L.cod[c] != G.obj[x]) return false;
    }
    for (int f = 0; f < K.nmor(); ++f)
        if (L.compose(G.mor[f], t.comp[K.dom[f]]) != L.compose(t.comp[K.cod[f]], F.mor[f])) return false;
    return true;
}

std::vector<FinFunctor> all_functors(const FinCategory& K, const FinCategory& L) {
    std::vector<FinFunctor> out;
    FinFunctor F;
    F.obj.assign(K.nobj, 0);
    F.mor.assign(K.nmor(), -1);
    std::vector<bool> is_id(K.nmor(), false);
    for (int o = 0; o < K.nobj; ++o) is_id[K.ident[o]] = true;
    auto consistent = [&](int upto) {
        for (int g = 0; g <= upto; ++g)
            for (int f = 0; f <= upto; ++f) {
                if (K.cod[f] != K.dom[g]) continue;
                int h = K.compose(g, f);
                if (h > upto) continue;
                if (F.mor[h] != L.compose(F.mor[g], F.mor[f])) return false;
            }
        return true;
    };
    std::function<void(int)> mors = [&](int f) {
        if (f == K.nmor()) {
            out.push_back(F);
            return;
        }
        std::vector<int> cands =
            is_id[f] ? std::vector<int>{L.ident[F.obj[K.dom[f]]]} : L.hom(F.obj[K.dom[f]], F.obj[K.cod[f]]);
        for (int g : cands) {
            F.mor[f] = g;
            if (consistent(f)) mors(f + 1);
        }
        F.mor[f] = -1;
    };
    std::function<void(int)> objs = [&](int x) {
        if (x == K.nobj) {
            mors(0);
            return;
        }
        for (int o = 0; o < L.nobj; ++o) {
            F.obj[x] = o;
            objs(x + 1);
        }
    };
    objs(0);
    return out;
}

std::vector<NatTransf> all_transformations(const FinCategory& K, const FinCategory& L, const FinFunctor& F,
                                           const FinFunctor& G) {
    std::vector<NatTransf> out;
    NatTransf t;
    t.comp.assign(K.nobj, -1);
    std::function<void(int)> rec = [&](int x) {
        if (x == K.nobj) {
            if (is_natural(K, L, F, G, t)) out.push_back(t);
            return;
        }
        for (int c : L.hom(F.obj[x], G.obj[x])) {
            t.comp[x] = c;
            rec(x + 1);
        }
    };
    rec(0);
    return out;
}

FinFunctor fin_compose(const FinCategory&, const FinFunctor& G, const FinFunctor& F) {
    FinFunctor H;
    for (int o : F.obj) H.obj.push_back(G.obj[o]);
    for (int f : F.mor) H.mor.push_back(G.mor[f]);
    return H;
}

NatTransf fin_vcompose(const FinCategory& L, const NatTransf& s, const NatTransf& t) {
    NatTransf r;
    for (std::size_t x = 0; x < t.comp.size(); ++x) r.comp.push_back(L.compose(s.comp[x], t.comp[x]));
    return r;
}

int Profunctor::component_size(int u, int x) const {
    int n = 0;
    for (int e = 0; e < size(); ++e) n += src[e] == u && tgt[e] == x;
    return n;
}

void Profunctor::check() const {
    const int n = size();
    need(static_cast<int>(src.size()) == n, "profunctor: src length mismatch");
    need(static_cast<int>(post.size()) == A->nmor() * n, "profunctor: post table has wrong size");
    need(static_cast<int>(pre.size()) == n * B->nmor(), "profunctor: pre table has wrong size");
    for (int e = 0; e < n; ++e) {
        need(tgt[e] >= 0 && tgt[e] < A->nobj && src[e] >= 0 && src[e] < B->nobj, "profunctor: endpoint out of range");
        need(act_post(A->ident[tgt[e]], e) == e, "profunctor: post identity law fails");
        need(act_pre(e, B->ident[src[e]]) == e, "profunctor: pre identity law fails");
        for (int a = 0; a < A->nmor(); ++a) {
            int r = act_post(a, e);
            if (A->dom[a] != tgt[e]) {
                need(r == -1, "profunctor: post action defined off its domain");
                continue;
            }
            need(r >= 0 && tgt[r] == A->cod[a] && src[r] == src[e], "profunctor: post action has wrong boundary");
            for (int a2 = 0; a2 < A->nmor(); ++a2)
                if (A->dom[a2] == A->cod[a])
                    need(act_post(a2, r) == act_post(A->compose(a2, a), e), "profunctor: post action not associative");
        }
        for (int b = 0; b < B->nmor(); ++b) {
            int r = act_pre(e, b);
            if (B->cod[b] != src[e]) {
                need(r == -1, "profunctor: pre action defined off its domain");
                continue;
            }
            need(r >= 0 && src[r] == B->dom[b] && tgt[r] == tgt[e], "profunctor: pre action has wrong boundary");
            for (int b2 = 0; b2 < B->nmor(); ++b2)
                if (B->cod[b2] == B->dom[b])
                    need(act_pre(r, b2) == act_pre(e, B->compose(b, b2)), "profunctor: pre action not associative");
            for (int a = 0; a < A->nmor(); ++a)
                if (A->dom[a] == tgt[e]) need(act_post(a, r) == act_pre(act_post(a, e), b), "profunctor: actions do not commute");
        }
    }
}

namespace {

// Build a profunctor from elements given as keys, with actions computed on keys.
template <class Key>
Profunctor from_keys(const FinCatPtr& A, const FinCatPtr& B, const std::vector<Key>& keys,
                     const std::function<int(const Key&)>& tgt_of, const std::function<int(const Key&)>& src_of,
                     const std::function<Key(int, const Key&)>& post_of, const std::function<Key(const Key&, int)>& pre_of) {
    std::map<Key, int> index;
    for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = static_cast<int>(i);
    Profunctor P;
    P.A = A;
    P.B = B;
    const int n = static_cast<int>(keys.size());
    for (const auto& k : keys) {
        P.tgt.push_back(tgt_of(k));
        P.src.push_back(src_of(k));
    }
    P.post.assign(A->nmor() * n, -1);
    P.pre.assign(n * B->nmor(), -1);
    for (int e = 0; e < n; ++e) {
        for (int a = 0; a < A->nmor(); ++a)
            if (A->dom[a] == P.tgt[e]) P.post[a * n + e] = index.at(post_of(a, keys[e]));
        for (int b = 0; b < B->nmor(); ++b)
            if (B->cod[b] == P.src[e]) P.pre[e * B->nmor() + b] = index.at(pre_of(keys[e], b));
    }
    P.check();
    return P;
}

}  // namespace

Profunctor prof_hom(const FinCatPtr& K) {
    std::vector<int> keys(K->nmor());
    for (int f = 0; f < K->nmor(); ++f) keys[f] = f;
    return from_keys<int>(
        K, K, keys, [&](const int& f) { return K->cod[f]; }, [&](const int& f) { return K->dom[f]; },
        [&](int a, const int& f) { return K->compose(a, f); }, [&](const int& f, int b) { return K->compose(f, b); });
}

Profunctor prof_representable(const FinCatPtr& A, const FinCatPtr& B, const FinFunctor& F) {
    using Key = std::pair<int, int>;  // (x, beta : u -> Fx)
    std::vector<Key> keys;
    for (int x = 0; x < A->nobj; ++x)
        for (int b = 0; b < B->nmor(); ++b)
            if (B->cod[b] == F.obj[x]) keys.push_back({x, b});
    return from_keys<Key>(
        A, B, keys, [](const Key& k) { return k.first; }, [&](const Key& k) { return B->dom[k.second]; },
        [&](int a, const Key& k) { return Key{A->cod[a], B->compose(F.mor[a], k.second)}; },
        [&](const Key& k, int b) { return Key{k.first, B->compose(k.second, b)}; });
}

Profunctor prof_corepresentable(const FinCatPtr& A, const FinCatPtr& B, const FinFunctor& F) {
    using Key = std::pair<int, int>;  // (x, beta : Fx -> u)
    std::vector<Key> keys;
    for (int x = 0; x < A->nobj; ++x)
        for (int b = 0; b < B->nmor(); ++b)
            if (B->dom[b] == F.obj[x]) keys.push_back({x, b});
    return from_keys<Key>(
        B, A, keys, [&](const Key& k) { return B->cod[k.second]; }, [](const Key& k) { return k.first; },
        [&](int b, const Key& k) { return Key{k.first, B->compose(b, k.second)}; },
        [&](const Key& k, int a) { return Key{A->dom[a], B->compose(k.second, F.mor[a])}; });
}

Profunctor prof_free(const FinCatPtr& A, const FinCatPtr& B, const std::vector<std::pair<int, int>>& gens) {
    using Key = std::tuple<int, int, int>;  // (generator, a, b) meaning a.g.b
    std::vector<Key> keys;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        auto [u, x] = gens[g];
        need(u >= 0 && u < B->nobj && x >= 0 && x < A->nobj, "prof_free: generator out of range");
        for (int a = 0; a < A->nmor(); ++a)
            if (A->dom[a] == x)
                for (int b = 0; b < B->nmor(); ++b)
                    if (B->cod[b] == u) keys.push_back({static_cast<int>(g), a, b});
    }
    return from_keys<Key>(
        A, B, keys, [&](const Key& k) { return A->cod[std::get<1>(k)]; },
        [&](const Key& k) { return B->dom[std::get<2>(k)]; },
        [&](int a, const Key& k) { return Key{std::get<0>(k), A->compose(a, std::get<1>(k)), std::get<2>(k)}; },
        [&](const Key& k, int b) { return Key{std::get<0>(k), std::get<1>(k), B->compose(std::get<2>(k), b)}; });
}

Profunctor prof_generated(const Profunctor& P, const std::vector<int>& seeds) {
    std::vector<bool> in(P.size(), false);
    std::deque<int> queue;
    for (int s : seeds)
        if (!in[s]) {
            in[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int e = queue.front();
        queue.pop_front();
        auto visit = [&](int r) {
            if (r >= 0 && !in[r]) {
                in[r] = true;
                queue.push_back(r);
            }
        };
        for (int a = 0; a < P.A->nmor(); ++a) visit(P.act_post(a, e));
        for (int b = 0; b < P.B->nmor(); ++b) visit(P.act_pre(e, b));
    }
    std::vector<int> keys;
    for (int e = 0; e < P.size(); ++e)
        if (in[e]) keys.push_back(e);
    return from_keys<int>(
        P.A, P.B, keys, [&](const int& e) { return P.tgt[e]; }, [&](const int& e) { return P.src[e]; },
        [&](int a, const int& e) { return P.act_post(a, e); }, [&](const int& e, int b) { return P.act_pre(e, b); });
}

Profunctor prof_terminal(const FinCatPtr& A, const FinCatPtr& B) {
    using Key = std::pair<int, int>;  // (x, u)
    std::vector<Key> keys;
    for (int x = 0; x < A->nobj; ++x)
        for (int u = 0; u < B->nobj; ++u) keys.push_back({x, u});
    return from_keys<Key>(
        A, B, keys, [](const Key& k) { return k.first; }, [](const Key& k) { return k.second; },
        [&](int a, const Key& k) { return Key{A->cod[a], k.second}; },
        [&](const Key& k, int b) { return Key{k.first, B->dom[b]}; });
}

Profunctor prof_compose_coend(const Profunctor& T, const Profunctor& S) {
    need(*S.B == *T.A, "prof_compose_coend: middle categories differ");
    const auto& M = *S.B;
    // Composable pairs (s, t) with src(s) == tgt(t).
    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> index;
    for (int s = 0; s < S.size(); ++s)
        for (int t = 0; t < T.size(); ++t)
            if (S.src[s] == T.tgt[t]) {
                index[{s, t}] = static_cast<int>(pairs.size());
                pairs.push_back({s, t});
            }
    const int n = static_cast<int>(pairs.size());
    // (s.beta, t) ~ (s, beta.t)
    std::vector<std::vector<int>> adj(n);
    for (int s = 0; s < S.size(); ++s)
        for (int beta = 0; beta < M.nmor(); ++beta) {
            if (M.cod[beta] != S.src[s]) continue;
            int sb = S.act_pre(s, beta);
            for (int t = 0; t < T.size(); ++t) {
                if (T.tgt[t] != M.dom[beta]) continue;
                int bt = T.act_post(beta, t);
                int p = index.at({sb, t}), q = index.at({s, bt});
                adj[p].push_back(q);
                adj[q].push_back(p);
            }
        }
    std::vector<int> cls(n, -1);
    std::vector<int> rep;
    for (int p = 0; p < n; ++p) {
        if (cls[p] >= 0) continue;
        int c = static_cast<int>(rep.size());
        rep.push_back(p);
        std::deque<int> queue{p};
        cls[p] = c;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v])
                if (cls[w] < 0) {
                    cls[w] = c;
                    queue.push_back(w);
                }
        }
    }
    Profunctor R;
    R.A = S.A;
    R.B = T.B;
    const int k = static_cast<int>(rep.size());
    for (int c = 0; c < k; ++c) {
        auto [s, t] = pairs[rep[c]];
        R.tgt.push_back(S.tgt[s]);
        R.src.push_back(T.src[t]);
    }
    R.post.assign(R.A->nmor() * k, -1);
    R.pre.assign(k * R.B->nmor(), -1);
    for (int c = 0; c < k; ++c) {
        auto [s, t] = pairs[rep[c]];
        for (int a = 0; a < R.A->nmor(); ++a)
            if (R.A->dom[a] == R.tgt[c]) R.post[a * k + c] = cls[index.at({S.act_post(a, s), t})];
        for (int b = 0; b < R.B->nmor(); ++b)
            if (R.B->cod[b] == R.src[c]) R.pre[c * R.B->nmor() + b] = cls[index.at({s, T.act_pre(t, b)})];
    }
    R.check();
    return R;
}

std::optional<std::vector<int>> prof_iso(const Profunctor& P, const Profunctor& Q) {
    if (P.size() != Q.size() || !(*P.A == *Q.A) || !(*P.B == *Q.B)) return std::nullopt;
    const int n = P.size();
    for (int u = 0; u < P.B->nobj; ++u)
        for (int x = 0; x < P.A->nobj; ++x)
            if (P.component_size(u, x) != Q.component_size(u, x)) return std::nullopt;

    // Assign e -> f and propagate along both actions.
    auto propagate = [&](std::vector<int>& fw, std::vector<int>& bw, int e0, int f0) {
        std::deque<std::pair<int, int>> queue{{e0, f0}};
        while (!queue.empty()) {
            auto [e, f] = queue.front();
            queue.pop_front();
            if (fw[e] == f && bw[f] == e) continue;
            if (fw[e] >= 0 || bw[f] >= 0) return false;
            if (P.tgt[e] != Q.tgt[f] || P.src[e] != Q.src[f]) return false;
            fw[e] = f;
            bw[f] = e;
            for (int a = 0; a < P.A->nmor(); ++a)
                if (P.A->dom[a] == P.tgt[e]) queue.push_back({P.act_post(a, e), Q.act_post(a, f)});
            for (int b = 0; b < P.B->nmor(); ++b)
                if (P.B->cod[b] == P.src[e]) queue.push_back({P.act_pre(e, b), Q.act_pre(f, b)});
        }
        return true;
    };
    std::function<std::optional<std::vector<int>>(std::vector<int>, std::vector<int>)> rec =
        [&](std::vector<int> fw, std::vector<int> bw) -> std::optional<std::vector<int>> {
        int e = 0;
        while (e < n && fw[e] >= 0) ++e;
        if (e == n) return fw;
        for (int f = 0; f < n; ++f) {
            if (bw[f] >= 0 || Q.tgt[f] != P.tgt[e] || Q.src[f] != P.src[e]) continue;
            auto fw2 = fw, bw2 = bw;
            if (!propagate(fw2, bw2, e, f)) continue;
            if (auto r = rec(fw2, bw2)) return r;
        }
        return std::nullopt;
    };
    return rec(std::vector<int>(n, -1), std::vector<int>(n, -1));
}

std::vector<int> minplus_shortest(const std::vector<int>& dist, int n, int cap) {
    const int inf = cap + 1;
    std::vector<int> d(dist);
    for (auto& v : d) v = (v < 0 || v > cap) ? inf : v;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (d[i * n + j] == inf) continue;
                for (int k = 0; k < n; ++k) {
                    if (d[j * n + k] == inf) continue;
                    int s = d[i * n + j] + d[j * n + k];
                    if (s <= cap && s < d[i * n + k]) {
                        d[i * n + k] = s;
                        changed = true;
                    }
                }
            }
    }
    return d;
}

int Corpus::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

FinCategory Corpus::category(int max_obj, int max_mor) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        FinCategory K;
        switch (uniform(0, 7)) {
        case 0: K = FinCategory::terminal(); break;
        case 1: K = FinCategory::discrete(uniform(1, std::max(1, max_obj))); break;
        case 2: K = FinCategory::walking_arrow(); break;
        case 3: K = FinCategory::walking_iso(); break;
        case 4: K = FinCategory::parallel_pair(); break;
        case 5: {
            int n = uniform(1, std::max(1, max_obj));
            std::vector<bool> le(n * n, false);
            for (int a = 0; a < n; ++a) le[a * n + a] = true;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) le[a * n + b] = uniform(0, 1) == 1;
            for (int k = 0; k < n; ++k)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (le[a * n + k] && le[k * n + b]) le[a * n + b] = true;
            K = FinCategory::preorder(n, le, "poset" + std::to_string(n));
            break;
        }
        case 6: {
            int n = uniform(2, std::max(2, max_obj));
            std::vector<std::pair<int, int>> edges;
            int ne = uniform(1, 3);
            for (int e = 0; e < ne; ++e) {
                int a = uniform(0, n - 2);
                edges.push_back({a, uniform(a + 1, n - 1)});
            }
            K = FinCategory::free_dag(n, edges, "free" + std::to_string(n));
            break;
        }
        default: {
            switch (uniform(0, 2)) {
            case 0: K = FinCategory::monoid(2, {0, 1, 1, 0}, "Z2"); break;
            case 1: K = FinCategory::monoid(2, {0, 1, 1, 1}, "idempotent"); break;
            default: K = FinCategory::monoid(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, "Z3"); break;
            }
        }
        }
        if (K.nobj <= max_obj && K.nmor() <= max_mor) return K;
    }
    return FinCategory::terminal();
}

FinFunctor Corpus::functor(const FinCategory& K, const FinCategory& L) {
    auto all = all_functors(K, L);
    if (all.empty()) throw std::invalid_argument("no functor between the given categories");
    return all[uniform(0, static_cast<int>(all.size()) - 1)];
}

Profunctor Corpus::profunctor(const FinCatPtr& A, const FinCatPtr& B, int max_component) {
    auto fits = [&](const Profunctor& P) {
        for (int u = 0; u < B->nobj; ++u)
            for (int x = 0; x < A->nobj; ++x)
                if (P.component_size(u, x) > max_component) return false;
        return true;
    };
    for (int attempt = 0; attempt < 50; ++attempt) {
        Profunctor P;
        switch (uniform(0, 5)) {
        case 0:
            if (!(*A == *B)) continue;
            P = prof_hom(A);
            break;
        case 1: {
            auto fs = all_functors(*A, *B);
            if (fs.empty()) continue;
            P = prof_representable(A, B, fs[uniform(0, static_cast<int>(fs.size()) - 1)]);
            break;
        }
        case 2: {
            auto fs = all_functors(*B, *A);
            if (fs.empty()) continue;
            P = prof_corepresentable(B, A, fs[uniform(0, static_cast<int>(fs.size()) - 1)]);
            break;
        }
        case 3: {
            std::vector<std::pair<int, int>> gens;
            int ng = uniform(0, 2);
            for (int g = 0; g < ng; ++g) gens.push_back({uniform(0, B->nobj - 1), uniform(0, A->nobj - 1)});
            P = prof_free(A, B, gens);
            break;
        }
        case 4: {
            Profunctor T = prof_terminal(A, B);
            std::vector<int> seeds;
            for (int e = 0; e < T.size(); ++e)
                if (uniform(0, 2) == 0) seeds.push_back(e);
            P = prof_generated(T, seeds);
            break;
        }
        default: P = prof_terminal(A, B); break;
        }
        if (fits(P)) return P;
    }
    return prof_free(A, B, {});
}

}  // namespace ck
