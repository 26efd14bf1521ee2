#pragma once

#include <string>
#include <vector>

#include "collagekit/enriched.hpp"
#include "collagekit/oracle.hpp"

// Translations between the direct finite-category oracle and the enriched
// machinery over spans.
namespace ck {

// A and B must be fincat_to_ecat(*P.A) and fincat_to_ecat(*P.B).
EModule prof_to_module(const Profunctor& P, const ECatPtr& A, const ECatPtr& B);
Profunctor module_to_prof(const EModule& T, const FinCatPtr& A, const FinCatPtr& B);

// Objects of K grouped into blocks; block x has extent {objects with group x}
// in increasing order and hom(x, y) holds the morphisms from block x to block y.
ECatPtr fincat_partitioned(const FinCategory& K, const std::vector<int>& group, BasePtr spans);

EFunctor fin_to_efunctor(const FinCategory& K, const FinCategory& L, const FinFunctor& F, const ECatPtr& A,
                         const ECatPtr& B);
FinFunctor efunctor_to_fin(const FinCategory& K, const FinCategory& L, const EFunctor& D);
ETransformation nat_to_etrans(const FinCategory& L, const NatTransf& t, const EFunctor& D, const EFunctor& E);
NatTransf etrans_to_nat(const FinCategory& L, const ETransformation& t);

bool same_efunctor(const EFunctor& D, const EFunctor& E);

Enumerated<EFunctor> enumerate_efunctors(const ECatPtr& A, const ECatPtr& B, std::size_t limit);
Enumerated<ETransformation> enumerate_etrans(const EFunctor& D, const EFunctor& E, std::size_t limit);

struct Cat1Report {
    bool ok = true;
    int functors = 0;
    int transformations = 0;
    std::string detail;
};
// Functors and transformations between the internal categories of K and L
// biject with the oracle's, with exact round trips.
Cat1Report cat1_equiv_check(const FinCatPtr& K, const FinCatPtr& L, BasePtr spans, std::size_t limit = 100000);

}  // namespace ck
