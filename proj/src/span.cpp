#include "collagekit/span.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace ck {

bool SpanData::same(const CellData& o) const {
    auto p = dynamic_cast<const SpanData*>(&o);
    return p && apex == p->apex && left == p->left && right == p->right;
}

bool FnData::same(const CellData& o) const {
    auto p = dynamic_cast<const FnData*>(&o);
    return p && f == p->f;
}

UnionFind::UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

int UnionFind::find(int x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void UnionFind::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;  // root is always the smaller element
}

std::vector<int> UnionFind::classes(int* count) {
    const int n = static_cast<int>(parent_.size());
    std::vector<int> label(n, -1), out(n);
    int c = 0;
    for (int x = 0; x < n; ++x) {
        int r = find(x);
        if (label[r] < 0) label[r] = c++;
        out[x] = label[r];
    }
    if (count) *count = c;
    return out;
}

namespace {

struct Pullback {
    Hom1 span;
    std::vector<std::pair<int, int>> pairs;  // (x in f, y in g), lexicographic
    std::vector<int> index;                  // x * |g| + y -> position or -1
    int ng = 0;
    int at(int x, int y) const { return index[x * ng + y]; }
};

Pullback pullback(const Hom1& g, const Hom1& f) {
    if (f.dst != g.src)
        throw StructuralError("compose1: " + f.dst.key() + " does not match " + g.src.key());
    const auto& sf = SpanBase::data(f);
    const auto& sg = SpanBase::data(g);
    Pullback p;
    p.ng = sg.apex;
    p.index.assign(static_cast<std::size_t>(sf.apex) * sg.apex, -1);
    auto d = std::make_shared<SpanData>();
    for (int x = 0; x < sf.apex; ++x)
        for (int y = 0; y < sg.apex; ++y)
            if (sf.right[x] == sg.left[y]) {
                p.index[x * p.ng + y] = static_cast<int>(p.pairs.size());
                p.pairs.emplace_back(x, y);
                d->left.push_back(sf.left[x]);
                d->right.push_back(sg.right[y]);
            }
    d->apex = static_cast<int>(p.pairs.size());
    p.span = Hom1{f.src, g.dst, d};
    return p;
}

Hom1 build(const Obj& s, const Obj& t, std::vector<int> left, std::vector<int> right) {
    auto d = std::make_shared<SpanData>();
    d->apex = static_cast<int>(left.size());
    d->left = std::move(left);
    d->right = std::move(right);
    return Hom1{s, t, d};
}

Hom2 raw_map(const Hom1& s, const Hom1& t, std::vector<int> f) {
    auto d = std::make_shared<FnData>();
    d->f = std::move(f);
    return Hom2{s, t, d};
}

bool left_bijective(const Hom1& f) {
    const auto& s = SpanBase::data(f);
    const int n = set_size(f.src);
    if (s.apex != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : s.left) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

}  // namespace

SpanBase::SpanBase(ArityClass a, TightRule rule) : rule_(rule) { arity_ = a; }

std::string SpanBase::name() const {
    std::string n = "span";
    if (rule_ == TightRule::ALL) n += "[all-tight]";
    if (rule_ == TightRule::IDENTITY) n += "[identity-tight]";
    return n;
}

Hom1 SpanBase::make(int src, int dst, std::vector<int> left, std::vector<int> right) {
    if (left.size() != right.size()) throw StructuralError("span legs have different lengths");
    for (int v : left)
        if (v < 0 || v >= src) throw StructuralError("span left leg leaves its codomain");
    for (int v : right)
        if (v < 0 || v >= dst) throw StructuralError("span right leg leaves its codomain");
    return build(set_obj(src), set_obj(dst), std::move(left), std::move(right));
}

Hom2 SpanBase::map(const Hom1& s, const Hom1& t, std::vector<int> f) {
    if (s.src != t.src || s.dst != t.dst) throw StructuralError("2-cell between spans with different boundaries");
    const auto& a = data(s);
    const auto& b = data(t);
    if (static_cast<int>(f.size()) != a.apex) throw StructuralError("apex function has wrong length");
    for (int i = 0; i < a.apex; ++i) {
        int j = f[i];
        if (j < 0 || j >= b.apex) throw StructuralError("apex function leaves its codomain");
        if (b.left[j] != a.left[i] || b.right[j] != a.right[i])
            throw StructuralError("apex function does not commute with the legs");
    }
    return raw_map(s, t, std::move(f));
}

Hom1 SpanBase::graph(int a, int b, const std::vector<int>& g) {
    std::vector<int> l(a);
    std::iota(l.begin(), l.end(), 0);
    return make(a, b, l, g);
}

void SpanBase::check_obj(const Obj& a) const { (void)set_size(a); }

void SpanBase::check1(const Hom1& f) const {
    const auto& s = data(f);
    (void)make(set_size(f.src), set_size(f.dst), s.left, s.right);
    if (s.apex != static_cast<int>(s.left.size())) throw StructuralError("span apex size mismatch");
}

Hom1 SpanBase::id1(const Obj& a) const {
    const int n = set_size(a);
    std::vector<int> l(n);
    std::iota(l.begin(), l.end(), 0);
    return build(a, a, l, l);
}

Hom1 SpanBase::compose1(const Hom1& g, const Hom1& f) const { return pullback(g, f).span; }

bool SpanBase::eq1(const Hom1& f, const Hom1& g) const { return Base::eq1(f, g); }

Hom2 SpanBase::id2(const Hom1& f) const {
    std::vector<int> v(data(f).apex);
    std::iota(v.begin(), v.end(), 0);
    return raw_map(f, f, v);
}

Hom2 SpanBase::vcomp(const Hom2& b, const Hom2& a) const {
    if (!eq1(a.t, b.s)) throw StructuralError("vcomp: 2-cells are not composable");
    const auto& fa = fn(a);
    const auto& fb = fn(b);
    std::vector<int> r(fa.size());
    for (std::size_t i = 0; i < fa.size(); ++i) r[i] = fb[fa[i]];
    return raw_map(a.s, b.t, std::move(r));
}

Hom2 SpanBase::hcomp(const Hom2& b, const Hom2& a) const {
    auto src = pullback(b.s, a.s);
    auto dst = pullback(b.t, a.t);
    const auto& fa = fn(a);
    const auto& fb = fn(b);
    std::vector<int> r(src.pairs.size());
    for (std::size_t i = 0; i < src.pairs.size(); ++i) {
        auto [x, y] = src.pairs[i];
        int k = dst.at(fa[x], fb[y]);
        if (k < 0) throw InternalError("hcomp: image pair missing from pullback");
        r[i] = k;
    }
    return raw_map(src.span, dst.span, std::move(r));
}

bool SpanBase::eq2(const Hom2& a, const Hom2& b) const {
    return eq1(a.s, b.s) && eq1(a.t, b.t) && fn(a) == fn(b);
}

std::optional<Hom2> SpanBase::inverse2(const Hom2& a) const {
    const auto& f = fn(a);
    const int m = data(a.t).apex;
    if (static_cast<int>(f.size()) != m) return std::nullopt;
    std::vector<int> inv(m, -1);
    for (int i = 0; i < m; ++i) {
        if (inv[f[i]] >= 0) return std::nullopt;
        inv[f[i]] = i;
    }
    return raw_map(a.t, a.s, std::move(inv));
}

Hom2 SpanBase::assoc(const Hom1& h, const Hom1& g, const Hom1& f) const {
    auto hg = pullback(h, g);
    auto src = pullback(hg.span, f);  // (i in f, q in hg)
    auto gf = pullback(g, f);
    auto dst = pullback(h, gf.span);  // (p in gf, k in h)
    std::vector<int> r(src.pairs.size());
    for (std::size_t t = 0; t < src.pairs.size(); ++t) {
        auto [i, q] = src.pairs[t];
        auto [j, k] = hg.pairs[q];
        int p = gf.at(i, j);
        r[t] = dst.at(p, k);
    }
    return raw_map(src.span, dst.span, std::move(r));
}

Hom2 SpanBase::assoc_inv(const Hom1& h, const Hom1& g, const Hom1& f) const {
    return *inverse2(assoc(h, g, f));
}

Hom2 SpanBase::lunit(const Hom1& f) const {
    auto p = pullback(id1(f.dst), f);
    std::vector<int> r(p.pairs.size());
    for (std::size_t t = 0; t < p.pairs.size(); ++t) r[t] = p.pairs[t].first;
    return raw_map(p.span, f, std::move(r));
}

Hom2 SpanBase::lunit_inv(const Hom1& f) const { return *inverse2(lunit(f)); }

Hom2 SpanBase::runit(const Hom1& f) const {
    auto p = pullback(f, id1(f.src));
    std::vector<int> r(p.pairs.size());
    for (std::size_t t = 0; t < p.pairs.size(); ++t) r[t] = p.pairs[t].second;
    return raw_map(p.span, f, std::move(r));
}

Hom2 SpanBase::runit_inv(const Hom1& f) const { return *inverse2(runit(f)); }

Coproduct SpanBase::coproduct(const std::vector<Hom1>& fs, const Obj& s, const Obj& d) const {
    std::vector<int> left, right;
    for (const auto& f : fs) {
        if (f.src != s || f.dst != d) throw StructuralError("coproduct: summands have different boundaries");
        const auto& sf = data(f);
        left.insert(left.end(), sf.left.begin(), sf.left.end());
        right.insert(right.end(), sf.right.begin(), sf.right.end());
    }
    Coproduct c;
    c.sum = build(s, d, std::move(left), std::move(right));
    int off = 0;
    for (const auto& f : fs) {
        const int n = data(f).apex;
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), off);
        c.inj.push_back(raw_map(f, c.sum, std::move(v)));
        off += n;
    }
    return c;
}

Coequalizer SpanBase::refl_coequalizer(const Hom2& f, const Hom2& g) const {
    if (!eq1(f.s, g.s) || !eq1(f.t, g.t)) throw StructuralError("refl_coequalizer: 2-cells are not parallel");
    const auto& q = data(f.t);
    UnionFind uf(q.apex);
    const auto& ff = fn(f);
    const auto& gg = fn(g);
    for (std::size_t x = 0; x < ff.size(); ++x) uf.unite(ff[x], gg[x]);
    int count = 0;
    auto cls = uf.classes(&count);
    std::vector<int> left(count), right(count);
    for (int x = 0; x < q.apex; ++x) {
        left[cls[x]] = q.left[x];
        right[cls[x]] = q.right[x];
    }
    Coequalizer c;
    c.obj = build(f.t.src, f.t.dst, std::move(left), std::move(right));
    c.cocone = raw_map(f.t, c.obj, std::move(cls));
    return c;
}

std::optional<Hom2> SpanBase::factor(const Hom1& m, const Hom1& r, const std::vector<Hom2>& epis,
                                     const std::vector<Hom2>& maps) const {
    if (epis.size() != maps.size()) throw StructuralError("factor: families have different lengths");
    if (!same_boundary(m, r)) throw StructuralError("factor: boundaries differ");
    const int n = data(m).apex;
    std::vector<int> k(n, -1);
    for (std::size_t i = 0; i < epis.size(); ++i) {
        if (!eq1(epis[i].t, m) || !eq1(maps[i].t, r) || !eq1(epis[i].s, maps[i].s))
            throw StructuralError("factor: cocone boundaries do not match");
        const auto& e = fn(epis[i]);
        const auto& h = fn(maps[i]);
        for (std::size_t x = 0; x < e.size(); ++x) {
            if (k[e[x]] < 0)
                k[e[x]] = h[x];
            else if (k[e[x]] != h[x])
                return std::nullopt;
        }
    }
    for (int v : k)
        if (v < 0) return std::nullopt;
    const auto& dm = data(m);
    const auto& dr = data(r);
    for (int y = 0; y < n; ++y)
        if (dr.left[k[y]] != dm.left[y] || dr.right[k[y]] != dm.right[y]) return std::nullopt;
    return raw_map(m, r, std::move(k));
}

std::optional<std::pair<Hom2, Hom2>> SpanBase::iso1(const Hom1& f, const Hom1& g) const {
    if (!same_boundary(f, g)) return std::nullopt;
    const auto& a = data(f);
    const auto& b = data(g);
    if (a.apex != b.apex) return std::nullopt;
    auto order = [](const SpanData& s) {
        std::vector<int> idx(s.apex);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
            return std::tie(s.left[x], s.right[x]) < std::tie(s.left[y], s.right[y]);
        });
        return idx;
    };
    auto oa = order(a), ob = order(b);
    std::vector<int> fw(a.apex), bw(a.apex);
    for (int t = 0; t < a.apex; ++t) {
        int x = oa[t], y = ob[t];
        if (a.left[x] != b.left[y] || a.right[x] != b.right[y]) return std::nullopt;
        fw[x] = y;
        bw[y] = x;
    }
    return std::make_pair(raw_map(f, g, fw), raw_map(g, f, bw));
}

bool SpanBase::is_tight(const Hom1& f) const {
    switch (rule_) {
    case TightRule::ALL: return true;
    case TightRule::IDENTITY: {
        if (f.src != f.dst || !left_bijective(f)) return false;
        const auto& s = data(f);
        return s.left == s.right;
    }
    case TightRule::STANDARD: break;
    }
    return left_bijective(f);
}

std::optional<Hom1> SpanBase::tighten(const Hom1& f) const {
    if (!is_tight(f)) return std::nullopt;
    if (rule_ == TightRule::ALL) return f;
    const auto& s = data(f);
    const int n = set_size(f.src);
    std::vector<int> g(n);
    for (int x = 0; x < s.apex; ++x) g[s.left[x]] = s.right[x];
    return graph(n, set_size(f.dst), g);
}

std::optional<Adjoint> SpanBase::right_adjoint(const Hom1& f) const {
    if (!left_bijective(f)) return std::nullopt;
    const auto& s = data(f);
    Hom1 rev = build(f.dst, f.src, s.right, s.left);
    const int n = s.apex;
    std::vector<int> linv(n);
    for (int x = 0; x < n; ++x) linv[s.left[x]] = x;

    auto unit_t = pullback(rev, f);  // pairs (x in f, y in rev)
    std::vector<int> u(n);
    for (int i = 0; i < n; ++i) u[i] = unit_t.at(linv[i], linv[i]);
    auto counit_s = pullback(f, rev);  // pairs (x in rev, y in f)
    std::vector<int> c(counit_s.pairs.size());
    for (std::size_t t = 0; t < c.size(); ++t) c[t] = s.right[counit_s.pairs[t].first];

    Adjoint adj;
    adj.right = rev;
    adj.unit = map(id1(f.src), unit_t.span, u);
    adj.counit = map(counit_s.span, id1(f.dst), c);
    return adj;
}

Enumerated<Hom1> SpanBase::enumerate1(const Obj& s, const Obj& d, int cap) const {
    const int a = set_size(s), b = set_size(d);
    const int types = a * b;
    Enumerated<Hom1> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
        std::vector<int> l, r;
        for (int t : cur) {
            l.push_back(t / b);
            r.push_back(t % b);
        }
        out.items.push_back(build(s, d, l, r));
        if (static_cast<int>(cur.size()) == cap) return;
        for (int t = lo; t < types; ++t) {
            cur.push_back(t);
            rec(t);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Enumerated<Hom2> SpanBase::enumerate2(const Hom1& f, const Hom1& g, std::size_t limit) const {
    Enumerated<Hom2> out;
    if (!same_boundary(f, g)) return out;
    const auto& a = data(f);
    const auto& b = data(g);
    std::vector<std::vector<int>> cand(a.apex);
    for (int x = 0; x < a.apex; ++x)
        for (int y = 0; y < b.apex; ++y)
            if (a.left[x] == b.left[y] && a.right[x] == b.right[y]) cand[x].push_back(y);
    std::vector<int> cur(a.apex);
    std::function<bool(int)> rec = [&](int x) {
        if (x == a.apex) {
            if (out.items.size() >= limit) {
                out.complete = false;
                return false;
            }
            out.items.push_back(raw_map(f, g, cur));
            return true;
        }
        for (int y : cand[x]) {
            cur[x] = y;
            if (!rec(x + 1)) return false;
        }
        return true;
    };
    rec(0);
    return out;
}

Enumerated<Hom1> SpanBase::enumerate_tight(const Obj& s, const Obj& d, std::size_t limit) const {
    Enumerated<Hom1> out;
    const int a = set_size(s), b = set_size(d);
    if (rule_ == TightRule::IDENTITY) {
        if (a == b) out.items.push_back(id1(s));
        return out;
    }
    if (rule_ == TightRule::ALL) {
        out = enumerate1(s, d, 4);
        out.complete = false;
        return out;
    }
    std::vector<int> g(a, 0);
    if (a > 0 && b == 0) return out;
    while (true) {
        if (out.items.size() >= limit) {
            out.complete = false;
            return out;
        }
        out.items.push_back(graph(a, b, g));
        int i = a - 1;
        while (i >= 0 && g[i] == b - 1) g[i--] = 0;
        if (i < 0) break;
        ++g[i];
    }
    return out;
}

std::vector<Obj> SpanBase::objects_up_to(int size) const {
    std::vector<Obj> v;
    for (int n = 0; n <= size; ++n) v.push_back(set_obj(n));
    return v;
}

std::string SpanBase::show1(const Hom1& f) const {
    const auto& s = data(f);
    std::ostringstream os;
    os << "span " << set_size(f.src) << "->" << set_size(f.dst) << " [";
    for (int x = 0; x < s.apex; ++x) os << (x ? "," : "") << "(" << s.left[x] << "," << s.right[x] << ")";
    os << "]";
    return os.str();
}

}  // namespace ck
