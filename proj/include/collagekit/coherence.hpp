#pragma once

#include <memory>
#include <vector>

#include "collagekit/base.hpp"

namespace ck {

// Composites of lists of 1-cells in applicative order, bracketed to the right:
// [f1, f2, f3] means f1.(f2.f3).  The empty list is the identity on `obj`,
// which must be the source of the (empty) composite.
Hom1 comb(const Base& B, const std::vector<Hom1>& list, const Obj& obj);

// comb(L ++ M) => comb(L) . comb(M), built from associators and unitors.
Hom2 split(const Base& B, const std::vector<Hom1>& L, const std::vector<Hom1>& M, const Obj& obj);
Hom2 join(const Base& B, const std::vector<Hom1>& L, const std::vector<Hom1>& M, const Obj& obj);

// Arbitrary bracketing of a composite, for normalizing cells whose boundaries
// are not right combs.
struct Tree {
    Hom1 leaf;
    std::shared_ptr<const Tree> l, r;

    static std::shared_ptr<const Tree> of(const Hom1& f);
    static std::shared_ptr<const Tree> node(std::shared_ptr<const Tree> l, std::shared_ptr<const Tree> r);
};
using TreePtr = std::shared_ptr<const Tree>;

Hom1 tree_value(const Base& B, const TreePtr& t);
std::vector<Hom1> tree_leaves(const TreePtr& t);
// tree_value(t) => comb(tree_leaves(t)).
Hom2 norm(const Base& B, const TreePtr& t);

// Accumulates a 2-cell out of a fixed starting 1-cell by rewriting a list of
// 1-cells one segment at a time.
class Chain {
public:
    Chain(const Base& B, std::vector<Hom1> list, Obj obj);
    // Start from a tree-shaped composite.
    Chain(const Base& B, const TreePtr& start);

    // Replace list[i, i+k) by repl using alpha: comb(list[i, i+k)) => comb(repl).
    Chain& apply(std::size_t i, std::size_t k, const Hom2& alpha, std::vector<Hom1> repl);

    const std::vector<Hom1>& list() const { return list_; }
    const Hom2& cell() const { return cell_; }
    // The accumulated cell, re-bracketed to end at tree_value(target).
    Hom2 finish(const TreePtr& target) const;

private:
    const Base* B_;
    std::vector<Hom1> list_;
    Obj obj_;
    Hom2 cell_;
};

// Both triangle identities for f -| a.right.
bool adjoint_triangles(const Base& B, const Hom1& f, const Adjoint& a);

}  // namespace ck
