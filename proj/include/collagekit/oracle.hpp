#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

// Direct finite categories and profunctors.  Nothing here touches the base
// bicategory machinery: composites are computed by relation closure.
namespace ck {

struct FinCategory {
    std::string name;
    int nobj = 0;
    std::vector<int> dom, cod;  // per morphism
    std::vector<int> ident;     // per object
    std::vector<int> table;     // [g * nmor + f] = g.f, or -1 when cod f != dom g

    int nmor() const { return static_cast<int>(dom.size()); }
    int compose(int g, int f) const { return table[g * nmor() + f]; }
    std::vector<int> hom(int a, int b) const;
    // Throws std::invalid_argument when a law fails.
    void check() const;

    // Morphisms are listed as (dom, cod) pairs; identities must be among them.
    static FinCategory make(std::string name, int nobj, std::vector<std::pair<int, int>> mors, std::vector<int> ident,
                            const std::vector<int>& table);
    static FinCategory terminal();
    static FinCategory discrete(int n);
    static FinCategory walking_arrow();
    static FinCategory walking_iso();
    static FinCategory parallel_pair();
    // Thin category of a reflexive transitive relation given by le[a * n + b].
    static FinCategory preorder(int n, const std::vector<bool>& le, std::string name = "preorder");
    // Paths in a DAG with edges (from, to).
    static FinCategory free_dag(int n, const std::vector<std::pair<int, int>>& edges, std::string name = "free");
    // One-object category from a monoid table with identity 0.
    static FinCategory monoid(int n, const std::vector<int>& mult, std::string name = "monoid");
};
using FinCatPtr = std::shared_ptr<const FinCategory>;

bool operator==(const FinCategory& a, const FinCategory& b);

struct FinFunctor {
    std::vector<int> obj, mor;
    bool operator==(const FinFunctor&) const = default;
};

struct NatTransf {
    std::vector<int> comp;  // per object of the domain
    bool operator==(const NatTransf&) const = default;
};

bool is_functor(const FinCategory& K, const FinCategory& L, const FinFunctor& F);
bool is_natural(const FinCategory& K, const FinCategory& L, const FinFunctor& F, const FinFunctor& G,
                const NatTransf& t);
std::vector<FinFunctor> all_functors(const FinCategory& K, const FinCategory& L);
std::vector<NatTransf> all_transformations(const FinCategory& K, const FinCategory& L, const FinFunctor& F,
                                           const FinFunctor& G);
FinFunctor fin_compose(const FinCategory& L, const FinFunctor& G, const FinFunctor& F);
NatTransf fin_vcompose(const FinCategory& L, const NatTransf& s, const NatTransf& t);

// P : A -|-> B.  Elements are heteromorphisms from an object of B to an object
// of A; A acts by post-composition and B by pre-composition.
struct Profunctor {
    FinCatPtr A, B;
    std::vector<int> tgt;   // object of A
    std::vector<int> src;   // object of B
    std::vector<int> post;  // [a * n + e] = a.e (or -1)
    std::vector<int> pre;   // [e * |mor B| + b] = e.b (or -1)

    int size() const { return static_cast<int>(tgt.size()); }
    int act_post(int a, int e) const { return post[a * size() + e]; }
    int act_pre(int e, int b) const { return pre[e * B->nmor() + b]; }
    int component_size(int u, int x) const;
    void check() const;
};

Profunctor prof_hom(const FinCatPtr& K);
// B(1, F) : A -|-> B and B(F, 1) : B -|-> A for F : A -> B.
Profunctor prof_representable(const FinCatPtr& A, const FinCatPtr& B, const FinFunctor& F);
Profunctor prof_corepresentable(const FinCatPtr& A, const FinCatPtr& B, const FinFunctor& F);
// Freely generated by heteromorphisms given as (src in B, tgt in A).
Profunctor prof_free(const FinCatPtr& A, const FinCatPtr& B, const std::vector<std::pair<int, int>>& gens);
// The sub-profunctor generated by some elements.
Profunctor prof_generated(const Profunctor& P, const std::vector<int>& seeds);
Profunctor prof_terminal(const FinCatPtr& A, const FinCatPtr& B);

// T.S for S : A -|-> B and T : B -|-> C; elements are classes of composable
// pairs (s, t), listed by smallest member.
Profunctor prof_compose_coend(const Profunctor& T, const Profunctor& S);
// A bijection of elements commuting with both actions, if one exists.
std::optional<std::vector<int>> prof_iso(const Profunctor& P, const Profunctor& Q);

// All-pairs tightest distances by relaxation to a fixpoint; entries are
// 0..cap, with anything larger (and `inf`) reported as inf = cap + 1.
std::vector<int> minplus_shortest(const std::vector<int>& dist, int n, int cap);

// Deterministic corpus generation.
class Corpus {
public:
    explicit Corpus(std::uint64_t seed) : rng_(seed) {}
    std::mt19937_64& rng() { return rng_; }
    int uniform(int lo, int hi);

    // Random small category of one of the built-in families.
    FinCategory category(int max_obj, int max_mor);
    FinFunctor functor(const FinCategory& K, const FinCategory& L);
    Profunctor profunctor(const FinCatPtr& A, const FinCatPtr& B, int max_component);

private:
    std::mt19937_64 rng_;
};

}  // namespace ck
