#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "collagekit/suite.hpp"

// Usage: acceptance [--seed N] [--scale smoke|full]
int main(int argc, char** argv) {
    ck::SuiteOptions o;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--seed")) o.seed = std::strtoull(argv[i + 1], nullptr, 10);
        else if (!std::strcmp(argv[i], "--scale")) o.scale = ck::parse_scale(argv[i + 1]);
    }
    auto r = ck::run_acceptance(o);
    int failed = 0;
    for (const auto& c : r.criteria) {
        const char* tag = c.verdict == ck::Verdict::YES ? "PASS" : c.verdict == ck::Verdict::NO ? "FAIL" : "UNKNOWN";
        std::printf("[%s] criterion %s: %s -- %s\n", tag, c.id.c_str(), c.name.c_str(), c.detail.c_str());
        failed += c.verdict != ck::Verdict::YES;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(r.criteria.size()) - failed, r.criteria.size());
    return failed ? 1 : 0;
}
