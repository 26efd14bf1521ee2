#pragma once

#include <string>
#include <vector>

#include "collagekit/base.hpp"
#include "collagekit/enriched.hpp"

namespace ck {

// Finite family of objects of the inner base, in a fixed order.
struct FamObj final : ObjData {
    std::vector<Obj> members;
    std::string key() const override;
};

// Matrix of inner 1-cells; entry (u, x) : src[x] -> dst[u].
struct MatrixData final : CellData {
    int rows = 0, cols = 0;
    std::vector<Hom1> e;
    bool same(const CellData& o) const override;
};

// Entrywise 2-cell between matrices of the same shape.
struct Matrix2Data final : CellData {
    std::vector<Hom2> e;
    bool same(const CellData& o) const override;
};

// Matrices over a locally cocomplete base: composition sums over the middle
// index with the inner coproduct.
class MatrBase final : public Base {
public:
    explicit MatrBase(BasePtr inner);

    const BasePtr& inner() const { return inner_; }
    Obj family(std::vector<Obj> members) const;
    static const std::vector<Obj>& members(const Obj& o) { return o.as<FamObj>().members; }
    Hom1 matrix(const Obj& src, const Obj& dst, std::vector<Hom1> entries) const;
    Hom2 matrix2(const Hom1& s, const Hom1& t, std::vector<Hom2> entries) const;
    static const Hom1& entry(const Hom1& f, int u, int x);
    static const Hom2& entry(const Hom2& a, int u, int x);
    // The coproduct sum_x g(u,x).f(x,w) with its injections.
    Coproduct product_entry(const Hom1& g, const Hom1& f, int u, int w) const;

    BaseKind kind() const override { return BaseKind::MATR; }
    std::string name() const override;
    void check_obj(const Obj& a) const override;
    void check1(const Hom1& f) const override;

    Hom1 id1(const Obj& a) const override;
    Hom1 compose1(const Hom1& g, const Hom1& f) const override;

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

    // Tight matrices have one tight entry per column and initial entries
    // elsewhere.
    bool is_tight(const Hom1& f) const override;
    std::optional<Hom1> tighten(const Hom1& f) const override;
    std::optional<Adjoint> right_adjoint(const Hom1& f) const override;

    int carrier(const Hom1& f) const override;
    std::string show1(const Hom1& f) const override;

private:
    Hom2 unitor(const Hom1& f, bool left) const;
    BasePtr inner_;
};

std::shared_ptr<const MatrBase> matr(BasePtr inner);

// A C-category as a one-object category over Matr(C), and back.
ECatPtr to_monad(const ECategory& A, const std::shared_ptr<const MatrBase>& M);
ECatPtr from_monad(const ECategory& Ahat);
// T : A -|-> B as a module between the monads of A and B.
EModule to_monad_module(const EModule& T, const ECatPtr& Ahat, const ECatPtr& Bhat);

struct DecomposeReport {
    bool ok = true;
    bool round_trip = false;
    int pairs = 0;
    int agreed = 0;
    std::string detail;
};
// Round trip A -> monad -> A, and agreement of composition on the supplied
// module pairs (T, S) with S : A -|-> A and T : A -|-> A.
DecomposeReport decompose_check(const ECatPtr& A, const std::vector<std::pair<EModule, EModule>>& pairs);
// Composable endo-module pairs built from representables of endofunctors.
std::vector<std::pair<EModule, EModule>> sample_module_pairs(const ECatPtr& A, std::size_t max_functors);

}  // namespace ck
