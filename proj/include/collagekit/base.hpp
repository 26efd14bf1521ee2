#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ck {

enum class ArityClass { SINGLETON, FINITE };

enum class BaseKind { SPAN_FINSET, BOOLEAN_QUANTALE, FINITE_QUANTALE, MATR, MOD_DERIVED };

std::string to_string(ArityClass a);
std::string to_string(BaseKind k);

// Bad boundaries, malformed data, wrong base: the input is not well formed.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction produced something it should not have; indicates a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

class ObjData {
public:
    virtual ~ObjData() = default;
    virtual std::string key() const = 0;
};

class Obj {
public:
    Obj() = default;
    explicit Obj(std::shared_ptr<const ObjData> d);

    const std::string& key() const { return key_; }
    const ObjData* data() const { return d_.get(); }
    bool valid() const { return d_ != nullptr; }

    template <class T> const T& as() const {
        auto p = dynamic_cast<const T*>(d_.get());
        if (!p) throw StructuralError("object " + key_ + " belongs to a different base");
        return *p;
    }

    bool operator==(const Obj& o) const { return d_ == o.d_ || key_ == o.key_; }
    bool operator!=(const Obj& o) const { return !(*this == o); }
    bool operator<(const Obj& o) const { return key_ < o.key_; }

private:
    std::shared_ptr<const ObjData> d_;
    std::string key_;
};

// Finite set {0..n-1}; also the object type of quantaloid bases.
struct SetObj final : ObjData {
    int n;
    explicit SetObj(int n_) : n(n_) {}
    std::string key() const override { return "set:" + std::to_string(n); }
};

Obj set_obj(int n);
int set_size(const Obj& o);

class CellData {
public:
    virtual ~CellData() = default;
    virtual bool same(const CellData& o) const = 0;
};

struct Hom1 {
    Obj src, dst;
    std::shared_ptr<const CellData> d;

    template <class T> const T& as() const {
        auto p = dynamic_cast<const T*>(d.get());
        if (!p) throw StructuralError("1-cell belongs to a different base");
        return *p;
    }
};

struct Hom2 {
    Hom1 s, t;
    std::shared_ptr<const CellData> d;

    template <class T> const T& as() const {
        auto p = dynamic_cast<const T*>(d.get());
        if (!p) throw StructuralError("2-cell belongs to a different base");
        return *p;
    }
};

struct Coproduct {
    Hom1 sum;
    std::vector<Hom2> inj;
};

struct Coequalizer {
    Hom1 obj;
    Hom2 cocone;
};

struct Adjoint {
    Hom1 right;
    Hom2 unit;    // 1 => right . f
    Hom2 counit;  // f . right => 1
};

template <class T> struct Enumerated {
    std::vector<T> items;
    bool complete = true;
};

// A locally kappa-cocomplete bicategory with decidable hom-categories, optionally
// carrying a tight sub-bicategory.  compose1(g, f) is g.f in applicative order.
class Base {
public:
    virtual ~Base() = default;

    virtual BaseKind kind() const = 0;
    virtual std::string name() const = 0;
    ArityClass arity() const { return arity_; }
    void set_arity(ArityClass a) { arity_ = a; }

    virtual void check_obj(const Obj& a) const = 0;
    virtual void check1(const Hom1& f) const = 0;

    virtual Hom1 id1(const Obj& a) const = 0;
    virtual Hom1 compose1(const Hom1& g, const Hom1& f) const = 0;
    virtual bool eq1(const Hom1& f, const Hom1& g) const;

    virtual Hom2 id2(const Hom1& f) const = 0;
    virtual Hom2 vcomp(const Hom2& b, const Hom2& a) const = 0;
    virtual Hom2 hcomp(const Hom2& b, const Hom2& a) const = 0;
    virtual bool eq2(const Hom2& a, const Hom2& b) const = 0;
    virtual std::optional<Hom2> inverse2(const Hom2& a) const = 0;

    virtual Hom2 assoc(const Hom1& h, const Hom1& g, const Hom1& f) const = 0;
    virtual Hom2 assoc_inv(const Hom1& h, const Hom1& g, const Hom1& f) const = 0;
    virtual Hom2 lunit(const Hom1& f) const = 0;
    virtual Hom2 lunit_inv(const Hom1& f) const = 0;
    virtual Hom2 runit(const Hom1& f) const = 0;
    virtual Hom2 runit_inv(const Hom1& f) const = 0;

    virtual Coproduct coproduct(const std::vector<Hom1>& fs, const Obj& s, const Obj& d) const = 0;
    virtual Coequalizer refl_coequalizer(const Hom2& f, const Hom2& g) const = 0;
    // The unique k: m => r with k.epis[i] == maps[i], when the epis are jointly
    // epimorphic and the maps agree on them; nullopt otherwise.
    virtual std::optional<Hom2> factor(const Hom1& m, const Hom1& r, const std::vector<Hom2>& epis,
                                       const std::vector<Hom2>& maps) const = 0;

    virtual std::optional<std::pair<Hom2, Hom2>> iso1(const Hom1& f, const Hom1& g) const = 0;

    virtual bool is_tight(const Hom1& f) const = 0;
    virtual std::optional<Hom1> tighten(const Hom1& f) const = 0;
    virtual std::optional<Adjoint> right_adjoint(const Hom1& f) const = 0;

    // Finite enumerations used by the bounded searches.  Bases that cannot
    // enumerate return incomplete results.
    virtual int carrier(const Hom1& f) const = 0;
    virtual Enumerated<Hom1> enumerate1(const Obj& s, const Obj& d, int cap) const;
    virtual Enumerated<Hom2> enumerate2(const Hom1& f, const Hom1& g, std::size_t limit) const;
    virtual Enumerated<Hom1> enumerate_tight(const Obj& s, const Obj& d, std::size_t limit) const;
    virtual std::vector<Obj> objects_up_to(int size) const;

    virtual std::string show1(const Hom1& f) const = 0;

    // Derived operations.
    Hom2 whisker_left(const Hom1& k, const Hom2& a) const { return hcomp(id2(k), a); }
    Hom2 whisker_right(const Hom2& a, const Hom1& k) const { return hcomp(a, id2(k)); }
    Hom1 initial(const Obj& s, const Obj& d) const { return coproduct({}, s, d).sum; }
    Hom2 from_initial(const Hom1& zero, const Hom1& r) const;
    bool is_iso2(const Hom2& a) const { return inverse2(a).has_value(); }
    bool same_boundary(const Hom1& f, const Hom1& g) const { return f.src == g.src && f.dst == g.dst; }

protected:
    ArityClass arity_ = ArityClass::FINITE;
};

using BasePtr = std::shared_ptr<const Base>;

}  // namespace ck
