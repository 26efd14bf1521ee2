#pragma once

#include "collagekit/base.hpp"
#include "collagekit/quantale.hpp"
#include "collagekit/span.hpp"

namespace ck {

// Matrix of quantale elements; a 1-cell a -> b has b rows and a columns.
struct MatData final : CellData {
    int rows = 0, cols = 0;
    std::vector<int> e;
    int at(int i, int j) const { return e[i * cols + j]; }
    bool same(const CellData& o) const override;
};

struct TokData final : CellData {
    bool same(const CellData&) const override { return true; }
};

// The free quantaloid of matrices over a finite quantale: objects are finite
// sets, g.f is the matrix product with tensor and join.  Hom-categories are
// posets, so 2-cells are tokens witnessing pointwise order.
class QuantaloidBase final : public Base {
public:
    using TightPredicate = std::function<bool(const Quantale&, const MatData&)>;

    explicit QuantaloidBase(Quantale q, ArityClass a = ArityClass::FINITE,
                            TightRule rule = TightRule::STANDARD);
    QuantaloidBase(Quantale q, ArityClass a, TightPredicate custom);

    const Quantale& quantale() const { return q_; }
    TightRule rule() const { return rule_; }
    bool has_custom_tight() const { return static_cast<bool>(custom_); }

    Hom1 make(int src, int dst, std::vector<int> entries) const;
    Hom2 token(const Hom1& s, const Hom1& t) const;
    bool leq(const Hom1& f, const Hom1& g) const;
    static const MatData& data(const Hom1& f) { return f.as<MatData>(); }

    BaseKind kind() const override;
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

    int carrier(const Hom1& f) const override;
    Enumerated<Hom1> enumerate1(const Obj& s, const Obj& d, int cap) const override;
    Enumerated<Hom2> enumerate2(const Hom1& f, const Hom1& g, std::size_t limit) const override;
    Enumerated<Hom1> enumerate_tight(const Obj& s, const Obj& d, std::size_t limit) const override;
    std::vector<Obj> objects_up_to(int size) const override;

    std::string show1(const Hom1& f) const override;

private:
    Quantale q_;
    TightRule rule_;
    TightPredicate custom_;
};

}  // namespace ck
