#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "collagekit/enriched.hpp"
#include "collagekit/modcat.hpp"
#include "collagekit/oracle.hpp"

namespace ck {

using ModBasePtr = std::shared_ptr<const ModBase>;

// Categories enriched in Mod(C) have C-categories as extents, modules as homs
// and module cells as composition.  Throws unless the base is a ModBase.
const ModBase& mod_base_of(const ECategory& BB);

// Objects of A grouped into blocks (block indices 0..k-1, all used).  Block x
// has as extent the full subcategory on its members, or the discrete category
// on them; homs are the restrictions of A.
ECatPtr blocked(const ECatPtr& A, const std::vector<int>& group, bool discrete_extents, const ModBasePtr& M);
// Two blocks with extents E0 and E1, hom(0,1) = P : E1 -|-> E0 and nothing
// from block 0 to block 1.
ECatPtr cograph(const ModBasePtr& M, const ECatPtr& E0, const ECatPtr& E1, const EModule& P);
// Disjoint union with initial cross homs.
ECatPtr ecat_coproduct(const std::vector<ECatPtr>& parts);
// Equality of everything except object names.
bool same_ecat_unnamed(const ECategory& A, const ECategory& B);

struct Coprojection {
    EFunctor functor;  // identity cells into the total category
    EModule module;    // its representable; unset when the total category cannot carry it
};

struct CollageResult {
    ECatPtr input;  // over Mod(C)
    ECatPtr total;  // over C
    std::vector<int> offset;                  // first total object of each block
    std::vector<std::pair<int, int>> origin;  // total object -> (block, object of the extent)
    std::vector<Coprojection> coprojections;
    ECatPtr vertex;  // hat of total, over Mod(C); null when total is not a category
    std::optional<EModule> universal;  // input -|-> vertex
    std::optional<EModule> reverse;    // vertex -|-> input

    int block_of(int t) const { return origin[t].first; }
    int inject(int x, int z) const { return offset[x] + z; }
};

// The total category: objects are pairs (x, z) with z in the extent of x and
// hom((x,z),(y,w)) is the (z,w) component of hom(x,y).
ECatPtr flatten(const ECatPtr& input);
CollageResult collage(const ECatPtr& input);
// Collage data around a given total category; the universal module is left
// unset.  Used for images under base morphisms and for corrupted controls.
CollageResult collage_over(const ECatPtr& input, const ECatPtr& total);

// Coprojection module of block x with bare components total(t, (x,z)), and
// the reverse module with components total((x,z), t).
EModule column_module(const CollageResult& r, int x);
EModule row_module(const CollageResult& r, int x);
// Both assembled modules; throws InternalError when the total category does
// not support them.
std::pair<EModule, EModule> assemble_universal(const CollageResult& r);

struct Stage {
    std::string name;
    Verdict verdict = Verdict::YES;
    std::string detail;
};

struct Report {
    std::vector<Stage> stages;
    void add(std::string name, Verdict v, std::string detail = {});
    void add(std::string name, bool ok, std::string detail = {});
    void append(const Report& other, const std::string& prefix);
    Verdict verdict() const;
    bool ok() const { return verdict() == Verdict::YES; }
    // First stage that is not YES, or empty.
    std::string first_problem() const;
    std::string describe() const;
};

// Coprojections are maps with constructed right adjoints, the right adjoints
// assemble into a reverse module, and the universal module is an equivalence
// with explicit isomorphisms in both directions.
Report certify_collage(const CollageResult& r);

struct TightnessReport {
    Report report;
    bool degenerate = false;
    int examined = 0;
    int premises = 0;  // modules whose every restriction was tight
    std::string frontier;
};
// (i) every coprojection tightens; (ii) every module out of the total into
// hat(c), c of size <= max_target, with carriers <= cap, whose restrictions
// along all coprojections are tight, is itself tight.
TightnessReport detects_tightness(const CollageResult& r, int cap, int max_target = 1,
                                  bool assume_all_tight = false, std::size_t limit = 200000);

// Discrete input: the total category is the coproduct of the extents.
Report coproduct_check(const CollageResult& r);

// One-object input: restriction along the coprojection is a bijection between
// modules total -|-> hat(c) and algebras for the monad, on enumerated sets.
Report kleisli_check(const CollageResult& r, int cap, int max_target = 1, std::size_t limit = 200000);

// Collage, vertex hat(total) in Mod(C), and the certified equivalence.
Report idempotence_probe(const ECatPtr& input);

// Base morphisms preserving colimits locally.  Targets other than the
// identity are quantaloids, whose 2-cells are order relations.
struct BaseMorphism {
    enum class Kind { IDENTITY, SPAN_TO_REL, QUANTALE_HOM };
    Kind kind = Kind::IDENTITY;
    std::string name;
    BasePtr src, dst;
    std::vector<int> elements;

    Hom1 map1(const Hom1& f) const;
};
BaseMorphism identity_morphism(BasePtr C);
BaseMorphism span_to_rel(BasePtr spans);
BaseMorphism quantale_hom(BasePtr src, BasePtr dst, std::vector<int> elements);
// minplus(K) -> minplus(K2) for K2 <= K, truncating distances above K2.
BaseMorphism minplus_truncation(BasePtr src, int K2);

// Preservation of identities, composition and joins on samples.
Check spot_check(const BaseMorphism& F);
Report absoluteness_probe(const CollageResult& r, const BaseMorphism& F);

struct MetricGlue {
    int from = 0, to = 0;   // from < to
    std::vector<int> dist;  // points of `from` by points of `to`; above cap or negative means infinite
};
struct MetricDemo {
    CollageResult collage;
    int points = 0;
    std::vector<int> table;   // total distances, cap + 1 for infinite
    std::vector<int> oracle;  // minplus_shortest of the raw distances
    bool agrees = false;
};
ECatPtr metric_space(BasePtr Q, const std::vector<int>& dist, int n);
MetricDemo metric_collage_demo(int cap, const std::vector<std::vector<int>>& spaces, const std::vector<MetricGlue>& glue);

// Deterministic corpora.
ECatPtr random_span_mod_category(Corpus& c, const ModBasePtr& M);
ECatPtr random_bool_mod_category(Corpus& c, const ModBasePtr& M);
// A one-object input whose extent is discrete and whose monad is nontrivial.
ECatPtr random_monad(Corpus& c, const ModBasePtr& M);
struct Gluing {
    std::vector<std::vector<int>> spaces;
    std::vector<MetricGlue> glue;
};
Gluing random_gluing(Corpus& c, int cap);

}  // namespace ck
