#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "collagekit/io.hpp"
#include "collagekit/modcat.hpp"

namespace ck {

enum class Scale { SMOKE, FULL };
std::string to_string(Scale s);
Scale parse_scale(const std::string& s);

struct SuiteOptions {
    std::uint64_t seed = 7;
    Scale scale = Scale::SMOKE;
    int cap = 4;         // enumeration cap for bounded searches
    int metric_cap = 10; // quantale cap for the metric demo
    unsigned threads = 0;  // 0: COLLAGEKIT_THREADS, else hardware
};

struct Outcome {
    std::string id;  // "A5", "P:modcat/pentagon", ...
    std::string name;
    Verdict verdict = Verdict::YES;
    std::string detail;
};

struct SuiteResult {
    SuiteOptions options;
    std::vector<Outcome> properties;
    std::vector<Outcome> criteria;

    Verdict verdict() const;
    // Thread count is left out so reports agree across machines.
    Json json() const;
    std::string summary() const;
};

// Threads from COLLAGEKIT_THREADS (clamped to 1..64), defaulting to the
// hardware count.
unsigned thread_count();
// Runs f(0..n-1) on up to `threads` workers; results keep index order.
void parallel_for(int n, unsigned threads, const std::function<void(int)>& f);

// The twelve acceptance criteria.  Criterion 12 re-runs 1-11 and compares
// the serialized reports byte for byte.
SuiteResult run_acceptance(const SuiteOptions& o);
// Per-module property checks followed by the acceptance criteria.
SuiteResult run_suite(const SuiteOptions& o);

}  // namespace ck
