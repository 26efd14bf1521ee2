#pragma once

#include <memory>
#include <string>
#include <vector>

#include "collagekit/base.hpp"

namespace ck {

struct FinCategory;

// Outcome of a validator: the first violated axiom in lexicographic object
// order, or a structural problem with the data itself.
struct Check {
    enum Status { PASS, FAIL, STRUCTURAL };
    Status status = PASS;
    std::string axiom;
    std::string where;
    std::string detail;

    bool ok() const { return status == PASS; }
    static Check pass() { return {}; }
    static Check fail(std::string axiom, std::string where, std::string detail = {});
    static Check structural(std::string detail);
    std::string describe() const;
};

// Objects 0..n-1 with extents; hom(x, y) : ext(y) -> ext(x).
struct ECategory {
    BasePtr base;
    std::vector<std::string> names;
    std::vector<Obj> ext;
    std::vector<Hom1> homs;   // [x * n + y]
    std::vector<Hom2> comps;  // [(x * n + y) * n + z] : hom(x,y).hom(y,z) => hom(x,z)
    std::vector<Hom2> units;  // [x] : 1 => hom(x,x)

    int size() const { return static_cast<int>(names.size()); }
    const Hom1& hom(int x, int y) const { return homs[x * size() + y]; }
    const Hom2& m(int x, int y, int z) const { return comps[(x * size() + y) * size() + z]; }
    const Hom2& j(int x) const { return units[x]; }
    int index(const std::string& name) const;
};
using ECatPtr = std::shared_ptr<const ECategory>;

// D : A -> B.  cells[x] : ext_A(x) -> ext_B(Dx) is tight;
// sq[x * n + y] : cell(x).A(x,y) => B(Dx,Dy).cell(y).
struct EFunctor {
    ECatPtr src, dst;
    std::vector<int> obj;
    std::vector<Hom1> cells;
    std::vector<Hom2> sq;

    const Hom1& cell(int x) const { return cells[x]; }
    const Hom2& square(int x, int y) const { return sq[x * src->size() + y]; }
};

// comps[x] : D_x => B(Dx,Ex).E_x
struct ETransformation {
    EFunctor src, dst;
    std::vector<Hom2> comps;
};

// D and E agree on objects; comps[x] : D_x => E_x.
struct EIcon {
    EFunctor src, dst;
    std::vector<Hom2> comps;
};

// T : A -|-> B.  T(u, x) : ext_A(x) -> ext_B(u) for u in B, x in A.
//   ract(x, y, u) : T(u,x).A(x,y) => T(u,y)
//   lact(x, u, v) : B(u,v).T(v,x) => T(u,x)
struct EModule {
    ECatPtr src, dst;
    std::vector<Hom1> comps;  // [u * |A| + x]
    std::vector<Hom2> racts;  // [(x * |A| + y) * |B| + u]
    std::vector<Hom2> lacts;  // [(x * |B| + u) * |B| + v]

    int na() const { return src->size(); }
    int nb() const { return dst->size(); }
    const Hom1& at(int u, int x) const { return comps[u * na() + x]; }
    const Hom2& ract(int x, int y, int u) const { return racts[(x * na() + y) * nb() + u]; }
    const Hom2& lact(int x, int u, int v) const { return lacts[(x * nb() + u) * nb() + v]; }
    // Allocate empty tables of the right size.
    static EModule shape(ECatPtr src, ECatPtr dst);
};

// Morphism of modules with equal boundaries; comps[u * |A| + x] : T(u,x) => S(u,x).
struct ModCell {
    EModule src, dst;
    std::vector<Hom2> comps;

    const Hom2& at(int u, int x) const { return comps[u * src.na() + x]; }
};

Check validate(const ECategory& A);
Check validate(const EFunctor& D);
Check validate(const ETransformation& t);
Check validate(const EIcon& g);
Check validate(const EModule& T);
Check validate(const ModCell& f);

bool same_ecat(const ECategory& A, const ECategory& B);
bool same_module(const EModule& T, const EModule& S);
bool eq_modcell(const ModCell& f, const ModCell& g);
bool eq_trans(const ETransformation& a, const ETransformation& b);

ECatPtr hat_cat(BasePtr B, const Obj& v);
EFunctor hat_mor(BasePtr B, const Hom1& f);
EModule hat_loose(BasePtr B, const Hom1& f);
ModCell hat_2cell(BasePtr B, const Hom2& a);

ECatPtr discrete_cat(BasePtr B, const std::vector<Obj>& ext, std::vector<std::string> names = {});

// One-object category over spans of finite sets (the internal category of K).
ECatPtr fincat_to_ecat(const FinCategory& K, BasePtr spans);
FinCategory ecat_to_fincat(const ECategory& A);

EFunctor efun_id(const ECatPtr& A);
EFunctor efun_compose(const EFunctor& E, const EFunctor& D);
// (ED)C => E(DC), 1.D => D and D.1 => D.
EIcon efun_assoc_icon(const EFunctor& E, const EFunctor& D, const EFunctor& C);
EIcon efun_lunit_icon(const EFunctor& D);
EIcon efun_runit_icon(const EFunctor& D);

ETransformation etrans_id(const EFunctor& D);
ETransformation etrans_vcompose(const ETransformation& s, const ETransformation& t);
// G.t : GD => GE and t.H : DH => EH.
ETransformation etrans_whisker_left(const EFunctor& G, const ETransformation& t);
ETransformation etrans_whisker_right(const ETransformation& t, const EFunctor& H);
// s * t : G.D => H.E for t : D => E and s : G => H.
ETransformation etrans_hcompose(const ETransformation& s, const ETransformation& t);
EIcon icon_id(const EFunctor& D);
ETransformation icon_to_trans(const EIcon& g);

}  // namespace ck
