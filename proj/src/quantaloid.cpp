#include "collagekit/quantaloid.hpp"

#include <sstream>

namespace ck {

bool MatData::same(const CellData& o) const {
    auto p = dynamic_cast<const MatData*>(&o);
    return p && rows == p->rows && cols == p->cols && e == p->e;
}

namespace {

Hom1 build(const Obj& s, const Obj& t, std::vector<int> e) {
    auto d = std::make_shared<MatData>();
    d->rows = set_size(t);
    d->cols = set_size(s);
    d->e = std::move(e);
    return Hom1{s, t, d};
}

}  // namespace

QuantaloidBase::QuantaloidBase(Quantale q, ArityClass a, TightRule rule) : q_(std::move(q)), rule_(rule) {
    arity_ = a;
}

QuantaloidBase::QuantaloidBase(Quantale q, ArityClass a, TightPredicate custom)
    : q_(std::move(q)), rule_(TightRule::STANDARD), custom_(std::move(custom)) {
    arity_ = a;
}

BaseKind QuantaloidBase::kind() const {
    return q_.is_boolean() ? BaseKind::BOOLEAN_QUANTALE : BaseKind::FINITE_QUANTALE;
}

std::string QuantaloidBase::name() const {
    std::string n = "matrices over " + q_.label();
    if (custom_) n += "[custom-tight]";
    else if (rule_ == TightRule::ALL) n += "[all-tight]";
    else if (rule_ == TightRule::IDENTITY) n += "[identity-tight]";
    return n;
}

Hom1 QuantaloidBase::make(int src, int dst, std::vector<int> entries) const {
    if (src < 0 || dst < 0) throw StructuralError("negative matrix dimension");
    if (entries.size() != static_cast<std::size_t>(src) * dst)
        throw StructuralError("matrix has " + std::to_string(entries.size()) + " entries, expected " +
                              std::to_string(src * dst));
    for (int v : entries)
        if (v < 0 || v >= q_.size()) throw StructuralError("matrix entry outside the quantale");
    return build(set_obj(src), set_obj(dst), std::move(entries));
}

bool QuantaloidBase::leq(const Hom1& f, const Hom1& g) const {
    if (!same_boundary(f, g)) return false;
    const auto& a = data(f);
    const auto& b = data(g);
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (!q_.leq(a.e[i], b.e[i])) return false;
    return true;
}

Hom2 QuantaloidBase::token(const Hom1& s, const Hom1& t) const {
    if (!same_boundary(s, t)) throw StructuralError("2-cell between matrices with different boundaries");
    if (!leq(s, t)) throw StructuralError("no 2-cell: " + show1(s) + " is not below " + show1(t));
    return Hom2{s, t, std::make_shared<TokData>()};
}

void QuantaloidBase::check_obj(const Obj& a) const { (void)set_size(a); }

void QuantaloidBase::check1(const Hom1& f) const {
    const auto& m = data(f);
    if (m.rows != set_size(f.dst) || m.cols != set_size(f.src))
        throw StructuralError("matrix shape does not match its boundary");
    (void)make(m.cols, m.rows, m.e);
}

Hom1 QuantaloidBase::id1(const Obj& a) const {
    const int n = set_size(a);
    std::vector<int> e(static_cast<std::size_t>(n) * n, q_.bottom());
    for (int i = 0; i < n; ++i) e[i * n + i] = q_.unit();
    return build(a, a, std::move(e));
}

Hom1 QuantaloidBase::compose1(const Hom1& g, const Hom1& f) const {
    if (f.dst != g.src) throw StructuralError("compose1: " + f.dst.key() + " does not match " + g.src.key());
    const auto& mf = data(f);
    const auto& mg = data(g);
    const int c = mg.rows, b = mf.rows, a = mf.cols;
    std::vector<int> e(static_cast<std::size_t>(c) * a, q_.bottom());
    for (int i = 0; i < c; ++i)
        for (int k = 0; k < a; ++k) {
            int v = q_.bottom();
            for (int j = 0; j < b; ++j) v = q_.join(v, q_.tensor(mg.at(i, j), mf.at(j, k)));
            e[i * a + k] = v;
        }
    return build(f.src, g.dst, std::move(e));
}

bool QuantaloidBase::eq1(const Hom1& f, const Hom1& g) const { return Base::eq1(f, g); }

Hom2 QuantaloidBase::id2(const Hom1& f) const { return token(f, f); }

Hom2 QuantaloidBase::vcomp(const Hom2& b, const Hom2& a) const {
    if (!eq1(a.t, b.s)) throw StructuralError("vcomp: 2-cells are not composable");
    return token(a.s, b.t);
}

Hom2 QuantaloidBase::hcomp(const Hom2& b, const Hom2& a) const {
    return token(compose1(b.s, a.s), compose1(b.t, a.t));
}

bool QuantaloidBase::eq2(const Hom2& a, const Hom2& b) const { return eq1(a.s, b.s) && eq1(a.t, b.t); }

std::optional<Hom2> QuantaloidBase::inverse2(const Hom2& a) const {
    if (!leq(a.t, a.s)) return std::nullopt;
    return token(a.t, a.s);
}

Hom2 QuantaloidBase::assoc(const Hom1& h, const Hom1& g, const Hom1& f) const {
    return token(compose1(compose1(h, g), f), compose1(h, compose1(g, f)));
}

Hom2 QuantaloidBase::assoc_inv(const Hom1& h, const Hom1& g, const Hom1& f) const {
    return token(compose1(h, compose1(g, f)), compose1(compose1(h, g), f));
}

Hom2 QuantaloidBase::lunit(const Hom1& f) const { return token(compose1(id1(f.dst), f), f); }
Hom2 QuantaloidBase::lunit_inv(const Hom1& f) const { return token(f, compose1(id1(f.dst), f)); }
Hom2 QuantaloidBase::runit(const Hom1& f) const { return token(compose1(f, id1(f.src)), f); }
Hom2 QuantaloidBase::runit_inv(const Hom1& f) const { return token(f, compose1(f, id1(f.src))); }

Coproduct QuantaloidBase::coproduct(const std::vector<Hom1>& fs, const Obj& s, const Obj& d) const {
    std::vector<int> e(static_cast<std::size_t>(set_size(s)) * set_size(d), q_.bottom());
    for (const auto& f : fs) {
        if (f.src != s || f.dst != d) throw StructuralError("coproduct: summands have different boundaries");
        const auto& m = data(f);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = q_.join(e[i], m.e[i]);
    }
    Coproduct c;
    c.sum = build(s, d, std::move(e));
    for (const auto& f : fs) c.inj.push_back(token(f, c.sum));
    return c;
}

Coequalizer QuantaloidBase::refl_coequalizer(const Hom2& f, const Hom2& g) const {
    if (!eq1(f.s, g.s) || !eq1(f.t, g.t)) throw StructuralError("refl_coequalizer: 2-cells are not parallel");
    return {f.t, id2(f.t)};
}

std::optional<Hom2> QuantaloidBase::factor(const Hom1& m, const Hom1& r, const std::vector<Hom2>& epis,
                                           const std::vector<Hom2>& maps) const {
    if (epis.size() != maps.size()) throw StructuralError("factor: families have different lengths");
    if (!same_boundary(m, r)) throw StructuralError("factor: boundaries differ");
    for (std::size_t i = 0; i < epis.size(); ++i)
        if (!eq1(epis[i].t, m) || !eq1(maps[i].t, r) || !eq1(epis[i].s, maps[i].s))
            throw StructuralError("factor: cocone boundaries do not match");
    if (!leq(m, r)) return std::nullopt;
    return token(m, r);
}

std::optional<std::pair<Hom2, Hom2>> QuantaloidBase::iso1(const Hom1& f, const Hom1& g) const {
    if (!eq1(f, g)) return std::nullopt;
    return std::make_pair(token(f, g), token(g, f));
}

bool QuantaloidBase::is_tight(const Hom1& f) const {
    const auto& m = data(f);
    if (custom_) return custom_(q_, m);
    if (rule_ == TightRule::ALL) return true;
    if (rule_ == TightRule::IDENTITY) return f.src == f.dst && eq1(f, id1(f.src));
    for (int j = 0; j < m.cols; ++j) {
        int units = 0;
        for (int i = 0; i < m.rows; ++i) {
            int v = m.at(i, j);
            if (v == q_.unit() && units == 0) ++units;
            else if (v != q_.bottom()) return false;
        }
        if (units != 1) return false;
    }
    return true;
}

std::optional<Hom1> QuantaloidBase::tighten(const Hom1& f) const {
    if (!is_tight(f)) return std::nullopt;
    return f;
}

std::optional<Adjoint> QuantaloidBase::right_adjoint(const Hom1& f) const {
    const auto& m = data(f);
    const int b = m.rows, a = m.cols;
    // Largest g with f.g <= 1, computed entrywise by residuation.
    std::vector<int> e(static_cast<std::size_t>(a) * b, q_.bottom());
    for (int j = 0; j < a; ++j)
        for (int i = 0; i < b; ++i) {
            int v = q_.bottom();
            for (int z = 0; z < q_.size(); ++z) {
                bool ok = true;
                for (int i2 = 0; i2 < b && ok; ++i2) {
                    int bound = i2 == i ? q_.unit() : q_.bottom();
                    ok = q_.leq(q_.tensor(m.at(i2, j), z), bound);
                }
                if (ok) v = q_.join(v, z);
            }
            e[j * b + i] = v;
        }
    Hom1 g = build(f.dst, f.src, std::move(e));
    Hom1 gf = compose1(g, f);
    Hom1 fg = compose1(f, g);
    if (!leq(id1(f.src), gf) || !leq(fg, id1(f.dst))) return std::nullopt;
    return Adjoint{g, token(id1(f.src), gf), token(fg, id1(f.dst))};
}

int QuantaloidBase::carrier(const Hom1& f) const {
    int n = 0;
    for (int v : data(f).e) n += v != q_.bottom();
    return n;
}

Enumerated<Hom1> QuantaloidBase::enumerate1(const Obj& s, const Obj& d, int cap) const {
    const int cells = set_size(s) * set_size(d);
    Enumerated<Hom1> out;
    std::vector<int> e(cells, q_.bottom());
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == cells) {
            out.items.push_back(build(s, d, e));
            return;
        }
        e[pos] = q_.bottom();
        rec(pos + 1, left);
        if (left == 0) return;
        for (int v = 0; v < q_.size(); ++v) {
            if (v == q_.bottom()) continue;
            e[pos] = v;
            rec(pos + 1, left - 1);
        }
        e[pos] = q_.bottom();
    };
    rec(0, cap);
    out.complete = cap >= cells;
    return out;
}

Enumerated<Hom2> QuantaloidBase::enumerate2(const Hom1& f, const Hom1& g, std::size_t limit) const {
    Enumerated<Hom2> out;
    if (leq(f, g)) {
        if (limit == 0) out.complete = false;
        else out.items.push_back(token(f, g));
    }
    return out;
}

Enumerated<Hom1> QuantaloidBase::enumerate_tight(const Obj& s, const Obj& d, std::size_t limit) const {
    Enumerated<Hom1> out;
    const int a = set_size(s), b = set_size(d);
    if (custom_ || rule_ == TightRule::ALL) {
        auto all = enumerate1(s, d, a * b);
        for (auto& h : all.items) {
            if (!is_tight(h)) continue;
            if (out.items.size() >= limit) {
                out.complete = false;
                break;
            }
            out.items.push_back(h);
        }
        return out;
    }
    if (rule_ == TightRule::IDENTITY) {
        if (a == b) out.items.push_back(id1(s));
        return out;
    }
    if (a > 0 && b == 0) return out;
    std::vector<int> g(a, 0);
    while (true) {
        if (out.items.size() >= limit) {
            out.complete = false;
            return out;
        }
        std::vector<int> e(static_cast<std::size_t>(a) * b, q_.bottom());
        for (int j = 0; j < a; ++j) e[g[j] * a + j] = q_.unit();
        out.items.push_back(build(s, d, std::move(e)));
        int i = a - 1;
        while (i >= 0 && g[i] == b - 1) g[i--] = 0;
        if (i < 0) break;
        ++g[i];
    }
    return out;
}

std::vector<Obj> QuantaloidBase::objects_up_to(int size) const {
    std::vector<Obj> v;
    for (int n = 0; n <= size; ++n) v.push_back(set_obj(n));
    return v;
}

std::string QuantaloidBase::show1(const Hom1& f) const {
    const auto& m = data(f);
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows; ++i) {
        os << (i ? "," : "") << "[";
        for (int j = 0; j < m.cols; ++j) os << (j ? "," : "") << q_.name(m.at(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace ck
