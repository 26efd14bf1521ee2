#include "collagekit/base.hpp"

namespace ck {

std::string to_string(ArityClass a) {
    return a == ArityClass::SINGLETON ? "singleton" : "finite";
}

std::string to_string(BaseKind k) {
    switch (k) {
    case BaseKind::SPAN_FINSET: return "span";
    case BaseKind::BOOLEAN_QUANTALE: return "boolean";
    case BaseKind::FINITE_QUANTALE: return "quantale";
    case BaseKind::MATR: return "matr";
    case BaseKind::MOD_DERIVED: return "mod";
    }
    return "?";
}

Obj::Obj(std::shared_ptr<const ObjData> d) : d_(std::move(d)), key_(d_ ? d_->key() : std::string()) {}

Obj set_obj(int n) {
    if (n < 0) throw StructuralError("negative set size");
    return Obj(std::make_shared<SetObj>(n));
}

int set_size(const Obj& o) { return o.as<SetObj>().n; }

bool Base::eq1(const Hom1& f, const Hom1& g) const {
    if (f.src != g.src || f.dst != g.dst) return false;
    if (f.d == g.d) return true;
    return f.d && g.d && f.d->same(*g.d);
}

Enumerated<Hom1> Base::enumerate1(const Obj&, const Obj&, int) const { return {{}, false}; }

Enumerated<Hom2> Base::enumerate2(const Hom1&, const Hom1&, std::size_t) const { return {{}, false}; }

Enumerated<Hom1> Base::enumerate_tight(const Obj&, const Obj&, std::size_t) const { return {{}, false}; }

std::vector<Obj> Base::objects_up_to(int) const { return {}; }

Hom2 Base::from_initial(const Hom1& zero, const Hom1& r) const {
    auto k = factor(zero, r, {}, {});
    if (!k) throw StructuralError("1-cell " + show1(zero) + " is not initial");
    return *k;
}

}  // namespace ck
