#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "collagekit/enriched.hpp"

namespace ck {

// Three-valued answer of bounded searches.
enum class Verdict { YES, NO, UNKNOWN };
std::string to_string(Verdict v);

// T.S for S : A -|-> B and T : B -|-> C, with the coequalizer cocones
// cocone(u, w, x) : T(u,x).S(x,w) => (T.S)(u,w) retained for universal-property
// constructions.
struct ModComposite {
    EModule T, S;
    EModule composite;
    std::vector<Hom2> cocones;  // [(u * |A| + w) * |B| + x]

    const Hom2& cocone(int u, int w, int x) const {
        return cocones[(u * composite.na() + w) * T.na() + x];
    }
    // The cocone family into composite(u, w), indexed by the middle object.
    std::vector<Hom2> family(int u, int w) const;
};

ModComposite mod_compose(const EModule& T, const EModule& S);
EModule mod_id(const ECatPtr& A);

ModCell modcell_id(const EModule& T);
ModCell modcell_vcomp(const ModCell& g, const ModCell& f);
std::optional<ModCell> modcell_inverse(const ModCell& f);
// g * f : T.S => T'.S' for f : S => S' and g : T => T'.
ModCell modcell_hcomp(const ModCell& g, const ModCell& f, const ModComposite& src, const ModComposite& dst);

// (U.T).S => U.(T.S), and the inverse.
std::pair<ModCell, ModCell> mod_associator(const EModule& U, const EModule& T, const EModule& S);
// 1.T => T and T.1 => T, each with its inverse.
std::pair<ModCell, ModCell> mod_lunitor(const EModule& T);
std::pair<ModCell, ModCell> mod_runitor(const EModule& T);

EModule representable(const EFunctor& D);
EModule corepresentable(const EFunctor& D);

struct AdjunctionWitness {
    EModule left, right;
    ModCell unit;    // 1 => right.left
    ModCell counit;  // left.right => 1
};

// B(1,D) -| B(D,1) with unit and counit built from the base adjunctions of the
// tight cells.
AdjunctionWitness representable_adjunction(const EFunctor& D);
bool adjunction_check(const AdjunctionWitness& w);

ModCell trans_to_modcell(const ETransformation& t);
ETransformation modcell_to_trans(const ModCell& f, const EFunctor& D, const EFunctor& E);

// B(1, E.D) => B(1,E).B(1,D) and its inverse.
std::pair<ModCell, ModCell> j_compose_witness(const EFunctor& E, const EFunctor& D);

struct Tightening {
    Verdict verdict = Verdict::UNKNOWN;
    std::optional<EFunctor> functor;
    std::optional<ModCell> iso;  // B(1,D) => T
    std::string note;
};
// Search for D with T iso to B(1,D).  limit bounds the tight cells and 2-cells
// examined per object; exceeding it yields UNKNOWN.
Tightening find_tightening(const EModule& T, std::size_t limit = 4096);

struct IsoSearch {
    std::optional<std::pair<ModCell, ModCell>> iso;
    bool exhausted = true;  // false when the search gave up
};
// An invertible module cell T => S.  Component carriers above cap make the
// search give up.
IsoSearch module_iso(const EModule& T, const EModule& S, int cap = 32);

struct EquivalenceResult {
    Verdict verdict = Verdict::UNKNOWN;
    std::optional<EModule> inverse;
    std::string reason;
};
// Is T an equivalence in Mod(C)?  NO is only reported when the candidate space
// was covered completely.
EquivalenceResult is_equivalence(const EModule& T, int cap = 4);
// Checks that S is a pseudo-inverse of T by explicit isos S.T = 1 and T.S = 1.
bool check_pseudo_inverse(const EModule& T, const EModule& S, int cap = 32);

struct RightAdjointSearch {
    Verdict verdict = Verdict::UNKNOWN;
    std::optional<AdjunctionWitness> witness;
};
RightAdjointSearch find_right_adjoint(const EModule& L, int cap = 4, std::size_t limit = 20000);

// Objects of Mod(C): enriched categories over C.
struct CatObj final : ObjData {
    ECatPtr cat;
    explicit CatObj(ECatPtr c) : cat(std::move(c)) {}
    std::string key() const override;
};
struct ModData final : CellData {
    EModule mod;
    bool same(const CellData& o) const override;
};
struct CellD final : CellData {
    ModCell cell;
    bool same(const CellData& o) const override;
};

// Mod(C) as a base in its own right: objects are C-categories, 1-cells modules
// and 2-cells module cells.
class ModBase final : public Base {
public:
    ModBase(BasePtr inner, ArityClass kappa);

    const BasePtr& inner() const { return inner_; }
    Obj obj(const ECatPtr& A) const;
    Hom1 wrap(const EModule& T) const;
    Hom2 wrap(const ModCell& f) const;
    static const ECatPtr& cat(const Obj& o) { return o.as<CatObj>().cat; }
    static const EModule& mod(const Hom1& f) { return f.as<ModData>().mod; }
    static const ModCell& cell(const Hom2& a) { return a.as<CellD>().cell; }
    // Cached composite witness.
    std::shared_ptr<const ModComposite> witness(const Hom1& g, const Hom1& f) const;

    BaseKind kind() const override { return BaseKind::MOD_DERIVED; }
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

    bool is_tight(const Hom1& f) const override;
    std::optional<Hom1> tighten(const Hom1& f) const override;
    std::optional<Adjoint> right_adjoint(const Hom1& f) const override;

    int carrier(const Hom1& f) const override;
    std::string show1(const Hom1& f) const override;

private:
    struct Entry {
        Hom1 g, f, result;
        ModComposite w;
    };
    std::shared_ptr<const Entry> entry(const Hom1& g, const Hom1& f) const;
    Hom2 mk(const Hom1& s, const Hom1& t, ModCell c) const;

    BasePtr inner_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<const CellData*, const CellData*>, std::shared_ptr<const Entry>> comp_cache_;
    mutable std::map<const ECategory*, std::pair<ECatPtr, Hom1>> id_cache_;
};

// Modules A -|-> B with carrier(u,x) <= caps[u * |A| + x] and total carrier at
// most total (negative: unbounded).  At most limit candidates are examined.
Enumerated<EModule> enumerate_modules(const ECatPtr& A, const ECatPtr& B, const std::vector<int>& caps, int total,
                                      std::size_t limit);
Enumerated<ModCell> enumerate_modcells(const EModule& T, const EModule& S, std::size_t limit);

// Upper bound on the component carriers of any right adjoint of a span-valued
// module L : A -|-> B, as caps for enumerate_modules(B, A, ...).  Saturates at
// INT_MAX.
std::vector<int> right_adjoint_bounds(const EModule& L);

}  // namespace ck
