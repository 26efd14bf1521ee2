#include "collagekit/coherence.hpp"

namespace ck {

namespace {

std::vector<Hom1> slice(const std::vector<Hom1>& v, std::size_t from, std::size_t to) {
    return std::vector<Hom1>(v.begin() + from, v.begin() + to);
}

Obj seg_src(const std::vector<Hom1>& suffix, const Obj& obj) { return suffix.empty() ? obj : suffix.front().dst; }

Hom2 rewrite(const Base& B, const std::vector<Hom1>& list, const Obj& obj, std::size_t i, std::size_t k,
             const Hom2& alpha, const std::vector<Hom1>& repl) {
    if (i == 0) {
        auto mid = slice(list, 0, k);
        auto suf = slice(list, k, list.size());
        Obj o = seg_src(suf, obj);
        if (!B.eq1(alpha.s, comb(B, mid, o)))
            throw StructuralError("chain: cell source " + B.show1(alpha.s) + " does not match segment " +
                                  B.show1(comb(B, mid, o)));
        if (!B.eq1(alpha.t, comb(B, repl, o)))
            throw StructuralError("chain: cell target does not match replacement");
        if (suf.empty()) return alpha;
        Hom2 h = B.hcomp(alpha, B.id2(comb(B, suf, obj)));
        if (mid.size() == 1 && repl.size() == 1) return h;
        Hom2 s = mid.size() == 1 ? B.id2(comb(B, list, obj)) : split(B, mid, suf, obj);
        Hom2 r = B.vcomp(h, s);
        if (repl.size() == 1) return r;
        return B.vcomp(join(B, repl, suf, obj), r);
    }
    std::vector<Hom1> rest = slice(list, 1, list.size());
    std::vector<Hom1> rest2;
    rest2.insert(rest2.end(), rest.begin(), rest.begin() + (i - 1));
    rest2.insert(rest2.end(), repl.begin(), repl.end());
    rest2.insert(rest2.end(), rest.begin() + (i - 1 + k), rest.end());
    const Hom1& a = list.front();
    Hom2 inner = B.whisker_left(a, rewrite(B, rest, obj, i - 1, k, alpha, repl));
    if (rest.empty()) inner = B.vcomp(inner, B.runit_inv(a));
    if (rest2.empty()) inner = B.vcomp(B.runit(a), inner);
    return inner;
}

}  // namespace

Hom1 comb(const Base& B, const std::vector<Hom1>& list, const Obj& obj) {
    if (list.empty()) return B.id1(obj);
    Hom1 acc = list.back();
    for (std::size_t t = list.size() - 1; t-- > 0;) acc = B.compose1(list[t], acc);
    return acc;
}

Hom2 split(const Base& B, const std::vector<Hom1>& L, const std::vector<Hom1>& M, const Obj& obj) {
    if (L.empty()) return B.lunit_inv(comb(B, M, obj));
    if (M.empty()) return B.runit_inv(comb(B, L, obj));
    std::vector<Hom1> all = L;
    all.insert(all.end(), M.begin(), M.end());
    if (L.size() == 1) return B.id2(comb(B, all, obj));
    auto tail = slice(L, 1, L.size());
    Hom2 inner = B.whisker_left(L.front(), split(B, tail, M, obj));
    return B.vcomp(B.assoc_inv(L.front(), comb(B, tail, seg_src(M, obj)), comb(B, M, obj)), inner);
}

Hom2 join(const Base& B, const std::vector<Hom1>& L, const std::vector<Hom1>& M, const Obj& obj) {
    if (L.empty()) return B.lunit(comb(B, M, obj));
    if (M.empty()) return B.runit(comb(B, L, obj));
    std::vector<Hom1> all = L;
    all.insert(all.end(), M.begin(), M.end());
    if (L.size() == 1) return B.id2(comb(B, all, obj));
    auto tail = slice(L, 1, L.size());
    Hom2 inner = B.whisker_left(L.front(), join(B, tail, M, obj));
    return B.vcomp(inner, B.assoc(L.front(), comb(B, tail, seg_src(M, obj)), comb(B, M, obj)));
}

TreePtr Tree::of(const Hom1& f) {
    auto t = std::make_shared<Tree>();
    t->leaf = f;
    return t;
}

TreePtr Tree::node(TreePtr l, TreePtr r) {
    auto t = std::make_shared<Tree>();
    t->l = std::move(l);
    t->r = std::move(r);
    return t;
}

Hom1 tree_value(const Base& B, const TreePtr& t) {
    if (!t->l) return t->leaf;
    return B.compose1(tree_value(B, t->l), tree_value(B, t->r));
}

std::vector<Hom1> tree_leaves(const TreePtr& t) {
    if (!t->l) return {t->leaf};
    auto a = tree_leaves(t->l);
    auto b = tree_leaves(t->r);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Hom2 norm(const Base& B, const TreePtr& t) {
    if (!t->l) return B.id2(t->leaf);
    auto ll = tree_leaves(t->l), lr = tree_leaves(t->r);
    Hom2 h = B.hcomp(norm(B, t->l), norm(B, t->r));
    if (ll.size() == 1) return h;
    return B.vcomp(join(B, ll, lr, lr.back().src), h);
}

namespace {

Hom2 denorm(const Base& B, const TreePtr& t) {
    if (!t->l) return B.id2(t->leaf);
    auto ll = tree_leaves(t->l), lr = tree_leaves(t->r);
    Hom2 h = B.hcomp(denorm(B, t->l), denorm(B, t->r));
    if (ll.size() == 1) return h;
    return B.vcomp(h, split(B, ll, lr, lr.back().src));
}

}  // namespace

Chain::Chain(const Base& B, std::vector<Hom1> list, Obj obj)
    : B_(&B), list_(std::move(list)), obj_(std::move(obj)), cell_(B.id2(comb(B, list_, obj_))) {}

Chain::Chain(const Base& B, const TreePtr& start) : B_(&B), list_(tree_leaves(start)) {
    obj_ = list_.back().src;
    cell_ = norm(B, start);
}

Chain& Chain::apply(std::size_t i, std::size_t k, const Hom2& alpha, std::vector<Hom1> repl) {
    if (i + k > list_.size()) throw StructuralError("chain: segment out of range");
    Hom2 step = rewrite(*B_, list_, obj_, i, k, alpha, repl);
    cell_ = B_->vcomp(step, cell_);
    std::vector<Hom1> next(list_.begin(), list_.begin() + i);
    next.insert(next.end(), repl.begin(), repl.end());
    next.insert(next.end(), list_.begin() + i + k, list_.end());
    list_ = std::move(next);
    return *this;
}

Hom2 Chain::finish(const TreePtr& target) const {
    auto leaves = tree_leaves(target);
    if (leaves.size() != list_.size()) throw StructuralError("chain: target shape has the wrong length");
    return B_->vcomp(denorm(*B_, target), cell_);
}

bool adjoint_triangles(const Base& B, const Hom1& f, const Adjoint& a) {
    const Hom1& r = a.right;
    Hom2 t1 = B.vcomp(B.whisker_left(f, a.unit), B.runit_inv(f));
    t1 = B.vcomp(B.assoc_inv(f, r, f), t1);
    t1 = B.vcomp(B.whisker_right(a.counit, f), t1);
    t1 = B.vcomp(B.lunit(f), t1);
    Hom2 t2 = B.vcomp(B.whisker_right(a.unit, r), B.lunit_inv(r));
    t2 = B.vcomp(B.assoc(r, f, r), t2);
    t2 = B.vcomp(B.whisker_left(r, a.counit), t2);
    t2 = B.vcomp(B.runit(r), t2);
    return B.eq2(t1, B.id2(f)) && B.eq2(t2, B.id2(r));
}

}  // namespace ck
