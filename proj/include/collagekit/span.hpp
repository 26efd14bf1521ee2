#pragma once

#include "collagekit/base.hpp"

namespace ck {

// Which 1-cells count as tight.  STANDARD is the instance default (left leg a
// bijection for spans, functional matrices for quantaloids).
enum class TightRule { STANDARD, ALL, IDENTITY };

struct SpanData final : CellData {
    int apex = 0;
    std::vector<int> left, right;
    bool same(const CellData& o) const override;
};

struct FnData final : CellData {
    std::vector<int> f;
    bool same(const CellData& o) const override;
};

// Spans of finite sets.  A 1-cell a -> b is a span a <- apex -> b; 2-cells are
// apex functions commuting with both legs.
class SpanBase final : public Base {
public:
    explicit SpanBase(ArityClass a = ArityClass::FINITE, TightRule rule = TightRule::STANDARD);

    static Hom1 make(int src, int dst, std::vector<int> left, std::vector<int> right);
    static Hom2 map(const Hom1& s, const Hom1& t, std::vector<int> f);
    static const SpanData& data(const Hom1& f) { return f.as<SpanData>(); }
    static const std::vector<int>& fn(const Hom2& a) { return a.as<FnData>().f; }
    // Graph span 1: a <- a -> b : g of a function.
    static Hom1 graph(int a, int b, const std::vector<int>& g);

    TightRule rule() const { return rule_; }

    BaseKind kind() const override { return BaseKind::SPAN_FINSET; }
    std::string name() const override;
    void check_obj(const Obj& a) const override;
    void check1(const Hom1& f) const override;

    Hom1 id1(const Obj& a) const override;
    Hom1 compose1(const Hom1& g, const Hom1& f) const override;
    bool eq1(const Hom1& f, const Hom1& g) const override;

    Hom2 id2(const Hom1& f) const override;
    Hom2 vcomp(const Hom2& b, const Hom2& a) const override;
    Hom2 hcomp(const Hom2& b, const Hom2& a) const override;
    bool eq2(const Hom2& a, const Hom2& b) const override;
    std::optional<Hom2> inverse2(const Hom2& a) const override;

    Hom2 assoc(const Hom1& h, const Hom1& g, const Hom1& f) const override;
    Hom2 assoc_inv(const Hom1& h, const Hom1& g, const Hom1& f) const override;
    Hom2 lunit(const Hom1& f) const override;
    Hom2 lunit_inv(const Hom1& f) const override;
    Hom2 runit(const Hom1& f) const override;
    Hom2 runit_inv(const Hom1& f) const override;

    Coproduct coproduct(const std::vector<Hom1>& fs, const Obj& s, const Obj& d) const override;
    Coequalizer refl_coequalizer(const Hom2& f, const Hom2& g) const override;
    std::optional<Hom2> factor(const Hom1& m, const Hom1& r, const std::vector<Hom2>& epis,
                               const std::vector<Hom2>& maps) const override;

    std::optional<std::pair<Hom2, Hom2>> iso1(const Hom1& f, const Hom1& g) const override;

    bool is_tight(const Hom1& f) const override;
    std::optional<Hom1> tighten(const Hom1& f) const override;
    std::optional<Adjoint> right_adjoint(const Hom1& f) const override;

    int carrier(const Hom1& f) const override { return data(f).apex; }
    Enumerated<Hom1> enumerate1(const Obj& s, const Obj& d, int cap) const override;
    Enumerated<Hom2> enumerate2(const Hom1& f, const Hom1& g, std::size_t limit) const override;
    Enumerated<Hom1> enumerate_tight(const Obj& s, const Obj& d, std::size_t limit) const override;
    std::vector<Obj> objects_up_to(int size) const override;

    std::string show1(const Hom1& f) const override;

private:
    TightRule rule_;
};

// Union-find over 0..n-1; classes are labelled by their smallest member.
class UnionFind {
public:
    explicit UnionFind(int n);
    int find(int x);
    void unite(int a, int b);
    // Class index of each element, classes numbered in order of smallest member.
    std::vector<int> classes(int* count);

private:
    std::vector<int> parent_;
};

}  // namespace ck
