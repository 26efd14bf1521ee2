#include "collagekit/matr.hpp"

#include <sstream>

#include "collagekit/bridge.hpp"
#include "collagekit/coherence.hpp"
#include "collagekit/modcat.hpp"

namespace ck {

std::string FamObj::key() const {
    std::string s = "fam:(";
    for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + members[i].key();
    return s + ")";
}

bool MatrixData::same(const CellData& o) const {
    auto p = dynamic_cast<const MatrixData*>(&o);
    if (!p || p->rows != rows || p->cols != cols) return false;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Hom1& a = e[i];
        const Hom1& b = p->e[i];
        if (a.src != b.src || a.dst != b.dst) return false;
        if (a.d != b.d && !(a.d && b.d && a.d->same(*b.d))) return false;
    }
    return true;
}

bool Matrix2Data::same(const CellData& o) const {
    auto p = dynamic_cast<const Matrix2Data*>(&o);
    if (!p || p->e.size() != e.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i].d != p->e[i].d && !(e[i].d && p->e[i].d && e[i].d->same(*p->e[i].d))) return false;
    return true;
}

namespace {

const MatrixData& mdata(const Hom1& f) { return f.as<MatrixData>(); }
const Matrix2Data& m2data(const Hom2& a) { return a.as<Matrix2Data>(); }

Hom2 must(std::optional<Hom2> h, const char* what) {
    if (!h) throw InternalError(std::string("Matr: no factorization for ") + what);
    return *h;
}

}  // namespace

MatrBase::MatrBase(BasePtr inner) : inner_(std::move(inner)) {
    if (inner_->arity() == ArityClass::SINGLETON) throw StructuralError("Matr needs finite coproducts in the base");
    arity_ = ArityClass::SINGLETON;
}

std::string MatrBase::name() const { return "Matr(" + inner_->name() + ")"; }

Obj MatrBase::family(std::vector<Obj> members) const {
    auto d = std::make_shared<FamObj>();
    d->members = std::move(members);
    return Obj(d);
}

Hom1 MatrBase::matrix(const Obj& src, const Obj& dst, std::vector<Hom1> entries) const {
    const auto& a = members(src);
    const auto& b = members(dst);
    if (entries.size() != a.size() * b.size()) throw StructuralError("matrix has the wrong number of entries");
    auto d = std::make_shared<MatrixData>();
    d->rows = static_cast<int>(b.size());
    d->cols = static_cast<int>(a.size());
    d->e = std::move(entries);
    Hom1 f{src, dst, d};
    check1(f);
    return f;
}

Hom2 MatrBase::matrix2(const Hom1& s, const Hom1& t, std::vector<Hom2> entries) const {
    if (!same_boundary(s, t)) throw StructuralError("matrix 2-cell between different boundaries");
    if (entries.size() != mdata(s).e.size()) throw StructuralError("matrix 2-cell has the wrong number of entries");
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!inner_->eq1(entries[i].s, mdata(s).e[i]) || !inner_->eq1(entries[i].t, mdata(t).e[i]))
            throw StructuralError("matrix 2-cell entry has the wrong boundary");
    auto d = std::make_shared<Matrix2Data>();
    d->e = std::move(entries);
    return Hom2{s, t, d};
}

const Hom1& MatrBase::entry(const Hom1& f, int u, int x) {
    const auto& m = mdata(f);
    return m.e[u * m.cols + x];
}

const Hom2& MatrBase::entry(const Hom2& a, int u, int x) { return m2data(a).e[u * mdata(a.s).cols + x]; }

void MatrBase::check_obj(const Obj& a) const {
    for (const auto& m : members(a)) inner_->check_obj(m);
}

void MatrBase::check1(const Hom1& f) const {
    const auto& m = mdata(f);
    const auto& a = members(f.src);
    const auto& b = members(f.dst);
    if (m.rows != static_cast<int>(b.size()) || m.cols != static_cast<int>(a.size()))
        throw StructuralError("matrix shape does not match its families");
    for (int u = 0; u < m.rows; ++u)
        for (int x = 0; x < m.cols; ++x) {
            const Hom1& e = m.e[u * m.cols + x];
            if (e.src != a[x] || e.dst != b[u]) throw StructuralError("matrix entry has the wrong boundary");
        }
}

Hom1 MatrBase::id1(const Obj& a) const {
    const auto& m = members(a);
    const int n = static_cast<int>(m.size());
    std::vector<Hom1> e;
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) e.push_back(u == x ? inner_->id1(m[u]) : inner_->initial(m[x], m[u]));
    return matrix(a, a, std::move(e));
}

Coproduct MatrBase::product_entry(const Hom1& g, const Hom1& f, int u, int w) const {
    const int mid = mdata(f).rows;
    std::vector<Hom1> terms;
    for (int x = 0; x < mid; ++x) terms.push_back(inner_->compose1(entry(g, u, x), entry(f, x, w)));
    return inner_->coproduct(terms, members(f.src)[w], members(g.dst)[u]);
}

Hom1 MatrBase::compose1(const Hom1& g, const Hom1& f) const {
    if (f.dst != g.src) throw StructuralError("Matr compose1: 1-cells are not composable");
    const int rows = mdata(g).rows, cols = mdata(f).cols;
    std::vector<Hom1> e;
    for (int u = 0; u < rows; ++u)
        for (int w = 0; w < cols; ++w) e.push_back(product_entry(g, f, u, w).sum);
    return matrix(f.src, g.dst, std::move(e));
}

Hom2 MatrBase::id2(const Hom1& f) const {
    std::vector<Hom2> e;
    for (const auto& h : mdata(f).e) e.push_back(inner_->id2(h));
    return matrix2(f, f, std::move(e));
}

Hom2 MatrBase::vcomp(const Hom2& b, const Hom2& a) const {
    if (!eq1(a.t, b.s)) throw StructuralError("Matr vcomp: cells are not composable");
    std::vector<Hom2> e;
    for (std::size_t i = 0; i < m2data(a).e.size(); ++i) e.push_back(inner_->vcomp(m2data(b).e[i], m2data(a).e[i]));
    return matrix2(a.s, b.t, std::move(e));
}

Hom2 MatrBase::hcomp(const Hom2& b, const Hom2& a) const {
    Hom1 s = compose1(b.s, a.s), t = compose1(b.t, a.t);
    const int rows = mdata(s).rows, cols = mdata(s).cols, mid = mdata(a.s).rows;
    std::vector<Hom2> e;
    for (int u = 0; u < rows; ++u)
        for (int w = 0; w < cols; ++w) {
            Coproduct cs = product_entry(b.s, a.s, u, w), ct = product_entry(b.t, a.t, u, w);
            std::vector<Hom2> maps;
            for (int x = 0; x < mid; ++x)
                maps.push_back(inner_->vcomp(ct.inj[x], inner_->hcomp(entry(b, u, x), entry(a, x, w))));
            e.push_back(must(inner_->factor(cs.sum, ct.sum, cs.inj, maps), "horizontal composite"));
        }
    return matrix2(s, t, std::move(e));
}

bool MatrBase::eq2(const Hom2& a, const Hom2& b) const {
    if (!eq1(a.s, b.s) || !eq1(a.t, b.t)) return false;
    for (std::size_t i = 0; i < m2data(a).e.size(); ++i)
        if (!inner_->eq2(m2data(a).e[i], m2data(b).e[i])) return false;
    return true;
}

std::optional<Hom2> MatrBase::inverse2(const Hom2& a) const {
    std::vector<Hom2> e;
    for (const auto& c : m2data(a).e) {
        auto inv = inner_->inverse2(c);
        if (!inv) return std::nullopt;
        e.push_back(*inv);
    }
    return matrix2(a.t, a.s, std::move(e));
}

Hom2 MatrBase::assoc(const Hom1& h, const Hom1& g, const Hom1& f) const {
    Hom1 hg = compose1(h, g), gf = compose1(g, f);
    Hom1 L = compose1(hg, f), R = compose1(h, gf);
    const int rows = mdata(L).rows, cols = mdata(L).cols;
    const int ny = mdata(f).rows, nx = mdata(g).rows;
    std::vector<Hom2> e;
    for (int u = 0; u < rows; ++u)
        for (int w = 0; w < cols; ++w) {
            Coproduct lc = product_entry(hg, f, u, w), rc = product_entry(h, gf, u, w);
            std::vector<Hom2> epis, maps;
            for (int y = 0; y < ny; ++y) {
                Coproduct hgy = product_entry(h, g, u, y);
                for (int x = 0; x < nx; ++x) {
                    epis.push_back(inner_->vcomp(lc.inj[y], inner_->whisker_right(hgy.inj[x], entry(f, y, w))));
                    Coproduct gfx = product_entry(g, f, x, w);
                    Hom2 a = inner_->assoc(entry(h, u, x), entry(g, x, y), entry(f, y, w));
                    maps.push_back(
                        inner_->vcomp(rc.inj[x], inner_->vcomp(inner_->whisker_left(entry(h, u, x), gfx.inj[y]), a)));
                }
            }
            e.push_back(must(inner_->factor(lc.sum, rc.sum, epis, maps), "associator"));
        }
    return matrix2(L, R, std::move(e));
}

Hom2 MatrBase::assoc_inv(const Hom1& h, const Hom1& g, const Hom1& f) const { return *inverse2(assoc(h, g, f)); }

Hom2 MatrBase::unitor(const Hom1& f, bool left) const {
    Hom1 id = left ? id1(f.dst) : id1(f.src);
    Hom1 s = left ? compose1(id, f) : compose1(f, id);
    const int rows = mdata(f).rows, cols = mdata(f).cols;
    std::vector<Hom2> e;
    for (int u = 0; u < rows; ++u)
        for (int w = 0; w < cols; ++w) {
            Coproduct c = left ? product_entry(id, f, u, w) : product_entry(f, id, u, w);
            const int mid = left ? rows : cols;
            std::vector<Hom2> maps;
            for (int x = 0; x < mid; ++x) {
                const Hom1& term = c.inj[x].s;
                if (left)
                    maps.push_back(x == u ? inner_->lunit(entry(f, u, w)) : inner_->from_initial(term, entry(f, u, w)));
                else
                    maps.push_back(x == w ? inner_->runit(entry(f, u, w)) : inner_->from_initial(term, entry(f, u, w)));
            }
            e.push_back(must(inner_->factor(c.sum, entry(f, u, w), c.inj, maps), "unitor"));
        }
    return matrix2(s, f, std::move(e));
}

Hom2 MatrBase::lunit(const Hom1& f) const { return unitor(f, true); }
Hom2 MatrBase::lunit_inv(const Hom1& f) const { return *inverse2(lunit(f)); }
Hom2 MatrBase::runit(const Hom1& f) const { return unitor(f, false); }
Hom2 MatrBase::runit_inv(const Hom1& f) const { return *inverse2(runit(f)); }

Coproduct MatrBase::coproduct(const std::vector<Hom1>& fs, const Obj& s, const Obj& d) const {
    const auto& a = members(s);
    const auto& b = members(d);
    const int rows = static_cast<int>(b.size()), cols = static_cast<int>(a.size());
    for (const auto& f : fs)
        if (f.src != s || f.dst != d) throw StructuralError("Matr coproduct: summands have different boundaries");
    std::vector<Hom1> sum;
    std::vector<std::vector<Hom2>> inj(fs.size());
    for (int u = 0; u < rows; ++u)
        for (int x = 0; x < cols; ++x) {
            std::vector<Hom1> parts;
            for (const auto& f : fs) parts.push_back(entry(f, u, x));
            Coproduct c = inner_->coproduct(parts, a[x], b[u]);
            sum.push_back(c.sum);
            for (std::size_t i = 0; i < fs.size(); ++i) inj[i].push_back(c.inj[i]);
        }
    Coproduct out;
    out.sum = matrix(s, d, std::move(sum));
    for (std::size_t i = 0; i < fs.size(); ++i) out.inj.push_back(matrix2(fs[i], out.sum, std::move(inj[i])));
    return out;
}

Coequalizer MatrBase::refl_coequalizer(const Hom2& f, const Hom2& g) const {
    std::vector<Hom1> obj;
    std::vector<Hom2> q;
    for (std::size_t i = 0; i < m2data(f).e.size(); ++i) {
        Coequalizer c = inner_->refl_coequalizer(m2data(f).e[i], m2data(g).e[i]);
        obj.push_back(c.obj);
        q.push_back(c.cocone);
    }
    Coequalizer out;
    out.obj = matrix(f.t.src, f.t.dst, std::move(obj));
    out.cocone = matrix2(f.t, out.obj, std::move(q));
    return out;
}

std::optional<Hom2> MatrBase::factor(const Hom1& m, const Hom1& r, const std::vector<Hom2>& epis,
                                     const std::vector<Hom2>& maps) const {
    if (epis.size() != maps.size()) throw StructuralError("Matr factor: families have different lengths");
    std::vector<Hom2> e;
    for (std::size_t i = 0; i < mdata(m).e.size(); ++i) {
        std::vector<Hom2> ep, mp;
        for (std::size_t k = 0; k < epis.size(); ++k) {
            ep.push_back(m2data(epis[k]).e[i]);
            mp.push_back(m2data(maps[k]).e[i]);
        }
        auto h = inner_->factor(mdata(m).e[i], mdata(r).e[i], ep, mp);
        if (!h) return std::nullopt;
        e.push_back(*h);
    }
    return matrix2(m, r, std::move(e));
}

std::optional<std::pair<Hom2, Hom2>> MatrBase::iso1(const Hom1& f, const Hom1& g) const {
    if (!same_boundary(f, g)) return std::nullopt;
    std::vector<Hom2> fw, bw;
    for (std::size_t i = 0; i < mdata(f).e.size(); ++i) {
        auto p = inner_->iso1(mdata(f).e[i], mdata(g).e[i]);
        if (!p) return std::nullopt;
        fw.push_back(p->first);
        bw.push_back(p->second);
    }
    return std::make_pair(matrix2(f, g, std::move(fw)), matrix2(g, f, std::move(bw)));
}

namespace {

// Row of the single tight entry of each column, or -1.
std::vector<int> tight_rows(const Base& B, const Hom1& f) {
    const auto& m = mdata(f);
    std::vector<int> rows(m.cols, -1);
    for (int x = 0; x < m.cols; ++x)
        for (int u = 0; u < m.rows && rows[x] < 0; ++u) {
            if (!B.is_tight(m.e[u * m.cols + x])) continue;
            bool rest = true;
            for (int v = 0; v < m.rows && rest; ++v)
                if (v != u && B.carrier(m.e[v * m.cols + x]) != 0) rest = false;
            if (rest) rows[x] = u;
        }
    return rows;
}

}  // namespace

bool MatrBase::is_tight(const Hom1& f) const {
    for (int r : tight_rows(*inner_, f))
        if (r < 0) return false;
    return true;
}

std::optional<Hom1> MatrBase::tighten(const Hom1& f) const {
    if (!is_tight(f)) return std::nullopt;
    return f;
}

std::optional<Adjoint> MatrBase::right_adjoint(const Hom1& f) const {
    auto sigma = tight_rows(*inner_, f);
    for (int r : sigma)
        if (r < 0) return std::nullopt;
    const auto& a = members(f.src);
    const auto& b = members(f.dst);
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    std::vector<Adjoint> adj;
    for (int x = 0; x < na; ++x) {
        auto r = inner_->right_adjoint(entry(f, sigma[x], x));
        if (!r) return std::nullopt;
        adj.push_back(*r);
    }
    std::vector<Hom1> re;
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nb; ++u) re.push_back(u == sigma[x] ? adj[x].right : inner_->initial(b[u], a[x]));
    Adjoint out;
    out.right = matrix(f.dst, f.src, std::move(re));
    Hom1 rf = compose1(out.right, f), fr = compose1(f, out.right);
    Hom1 ida = id1(f.src), idb = id1(f.dst);
    std::vector<Hom2> ue, ce;
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y) {
            Coproduct c = product_entry(out.right, f, x, y);
            if (x == y)
                ue.push_back(inner_->vcomp(c.inj[sigma[x]], adj[x].unit));
            else
                ue.push_back(inner_->from_initial(entry(ida, x, y), c.sum));
        }
    for (int u = 0; u < nb; ++u)
        for (int v = 0; v < nb; ++v) {
            Coproduct c = product_entry(f, out.right, u, v);
            std::vector<Hom2> maps;
            for (int x = 0; x < na; ++x) {
                if (u == v && sigma[x] == u)
                    maps.push_back(adj[x].counit);
                else
                    maps.push_back(inner_->from_initial(c.inj[x].s, entry(idb, u, v)));
            }
            ce.push_back(must(inner_->factor(c.sum, entry(idb, u, v), c.inj, maps), "counit"));
        }
    out.unit = matrix2(ida, rf, std::move(ue));
    out.counit = matrix2(fr, idb, std::move(ce));
    if (!adjoint_triangles(*this, f, out)) return std::nullopt;
    return out;
}

int MatrBase::carrier(const Hom1& f) const {
    int n = 0;
    for (const auto& e : mdata(f).e) n += inner_->carrier(e);
    return n;
}

std::string MatrBase::show1(const Hom1& f) const {
    const auto& m = mdata(f);
    std::ostringstream os;
    os << "matrix " << m.rows << "x" << m.cols << " [";
    for (std::size_t i = 0; i < m.e.size(); ++i) os << (i ? "," : "") << inner_->carrier(m.e[i]);
    os << "]";
    return os.str();
}

std::shared_ptr<const MatrBase> matr(BasePtr inner) { return std::make_shared<MatrBase>(std::move(inner)); }

ECatPtr to_monad(const ECategory& A, const std::shared_ptr<const MatrBase>& M) {
    const Base& C = *A.base;
    const int n = A.size();
    auto out = std::make_shared<ECategory>();
    out->base = M;
    out->names = {"*"};
    Obj fam = M->family(A.ext);
    out->ext = {fam};
    Hom1 hom = M->matrix(fam, fam, A.homs);
    out->homs = {hom};
    Hom1 hh = M->compose1(hom, hom);
    std::vector<Hom2> me;
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            Coproduct c = M->product_entry(hom, hom, u, w);
            std::vector<Hom2> maps;
            for (int x = 0; x < n; ++x) maps.push_back(A.m(u, x, w));
            auto k = C.factor(c.sum, A.hom(u, w), c.inj, maps);
            if (!k) throw InternalError("to_monad: composition does not factor");
            me.push_back(*k);
        }
    out->comps = {M->matrix2(hh, hom, std::move(me))};
    Hom1 id = M->id1(fam);
    std::vector<Hom2> je;
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) je.push_back(u == x ? A.j(u) : C.from_initial(MatrBase::entry(id, u, x), A.hom(u, x)));
    out->units = {M->matrix2(id, hom, std::move(je))};
    return out;
}

ECatPtr from_monad(const ECategory& Ahat) {
    auto M = std::dynamic_pointer_cast<const MatrBase>(Ahat.base);
    if (!M || Ahat.size() != 1) throw StructuralError("from_monad needs a one-object category over Matr");
    const auto& fam = MatrBase::members(Ahat.ext[0]);
    const int n = static_cast<int>(fam.size());
    const Base& C = *M->inner();
    auto out = std::make_shared<ECategory>();
    out->base = M->inner();
    for (int i = 0; i < n; ++i) out->names.push_back("x" + std::to_string(i));
    out->ext = fam;
    const Hom1& hom = Ahat.hom(0, 0);
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) out->homs.push_back(MatrBase::entry(hom, u, x));
    out->comps.resize(n * n * n);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            Coproduct c = M->product_entry(hom, hom, x, z);
            for (int y = 0; y < n; ++y)
                out->comps[(x * n + y) * n + z] = C.vcomp(MatrBase::entry(Ahat.m(0, 0, 0), x, z), c.inj[y]);
        }
    for (int x = 0; x < n; ++x) out->units.push_back(MatrBase::entry(Ahat.j(0), x, x));
    return out;
}

EModule to_monad_module(const EModule& T, const ECatPtr& Ahat, const ECatPtr& Bhat) {
    auto M = std::dynamic_pointer_cast<const MatrBase>(Ahat->base);
    if (!M) throw StructuralError("to_monad_module needs categories over Matr");
    const Base& C = *M->inner();
    const int na = T.na(), nb = T.nb();
    EModule out = EModule::shape(Ahat, Bhat);
    Hom1 t = M->matrix(Ahat->ext[0], Bhat->ext[0], T.comps);
    out.comps = {t};
    const Hom1& a = Ahat->hom(0, 0);
    const Hom1& b = Bhat->hom(0, 0);
    std::vector<Hom2> re, le;
    for (int u = 0; u < nb; ++u)
        for (int y = 0; y < na; ++y) {
            Coproduct c = M->product_entry(t, a, u, y);
            std::vector<Hom2> maps;
            for (int x = 0; x < na; ++x) maps.push_back(T.ract(x, y, u));
            re.push_back(must(C.factor(c.sum, T.at(u, y), c.inj, maps), "right action"));
        }
    for (int u = 0; u < nb; ++u)
        for (int x = 0; x < na; ++x) {
            Coproduct c = M->product_entry(b, t, u, x);
            std::vector<Hom2> maps;
            for (int v = 0; v < nb; ++v) maps.push_back(T.lact(x, u, v));
            le.push_back(must(C.factor(c.sum, T.at(u, x), c.inj, maps), "left action"));
        }
    out.racts = {M->matrix2(M->compose1(t, a), t, std::move(re))};
    out.lacts = {M->matrix2(M->compose1(b, t), t, std::move(le))};
    return out;
}

DecomposeReport decompose_check(const ECatPtr& A, const std::vector<std::pair<EModule, EModule>>& pairs) {
    DecomposeReport rep;
    auto fail = [&](const std::string& s) {
        if (rep.ok) rep.detail = s;
        rep.ok = false;
    };
    auto M = matr(A->base);
    const Base& C = *A->base;
    ECatPtr Ahat = to_monad(*A, M);
    Check v = validate(*Ahat);
    if (!v.ok()) fail("monad fails validation: " + v.describe());
    auto back = std::make_shared<ECategory>(*from_monad(*Ahat));
    back->names = A->names;
    rep.round_trip = same_ecat(*A, *back);
    if (!rep.round_trip) fail("round trip through the monad is not exact");
    for (const auto& [T, S] : pairs) {
        ++rep.pairs;
        EModule Th = to_monad_module(T, Ahat, Ahat), Sh = to_monad_module(S, Ahat, Ahat);
        if (!validate(Th).ok() || !validate(Sh).ok()) {
            fail("translated module fails validation");
            continue;
        }
        ModComposite R = mod_compose(Th, Sh);
        ModComposite TS = mod_compose(T, S);
        EModule X = to_monad_module(TS.composite, Ahat, Ahat);
        Hom1 ts = M->compose1(Th.at(0, 0), Sh.at(0, 0));
        const int n = A->size();
        std::vector<Hom2> mu;
        bool good = true;
        for (int u = 0; u < n && good; ++u)
            for (int w = 0; w < n && good; ++w) {
                Coproduct c = M->product_entry(Th.at(0, 0), Sh.at(0, 0), u, w);
                auto k = C.factor(c.sum, TS.composite.at(u, w), c.inj, TS.family(u, w));
                if (!k) good = false;
                else mu.push_back(*k);
            }
        if (!good) {
            fail("composite cocone does not factor entrywise");
            continue;
        }
        Hom2 muh = M->matrix2(ts, X.at(0, 0), std::move(mu));
        auto phi = M->factor(R.composite.at(0, 0), X.at(0, 0), {R.cocone(0, 0, 0)}, {muh});
        if (!phi || !M->inverse2(*phi)) {
            fail("composites disagree after translation");
            continue;
        }
        ModCell cell;
        cell.src = R.composite;
        cell.dst = X;
        cell.comps = {*phi};
        if (!validate(cell).ok()) {
            fail("comparison cell is not a module map");
            continue;
        }
        ++rep.agreed;
    }
    return rep;
}

std::vector<std::pair<EModule, EModule>> sample_module_pairs(const ECatPtr& A, std::size_t max_functors) {
    std::vector<std::pair<EModule, EModule>> out;
    EModule id = mod_id(A);
    out.emplace_back(id, id);
    auto fs = enumerate_efunctors(A, A, 2000);
    for (std::size_t i = 0; i < fs.items.size() && i < max_functors; ++i) {
        const EFunctor& D = fs.items[i];
        EModule r = representable(D), c = corepresentable(D);
        out.emplace_back(c, r);
        out.emplace_back(r, c);
        out.emplace_back(r, id);
    }
    return out;
}

}  // namespace ck
