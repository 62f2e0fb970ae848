// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavy per-group computations are shared through the process-wide
// bundle cache, so the whole suite fits a single desk-scale run.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "blockmon/verify.hpp"

using namespace blockmon;

namespace {

struct Criterion {
    std::string name;
    SuiteResult result;
};

void print_line(int index, const Criterion& c) {
    std::printf("[%s] criterion %d: %s (%lld ms)\n", c.result.pass() ? "PASS" : "FAIL", index,
                c.name.c_str(), static_cast<long long>(c.result.wall_ms));
    if (!c.result.pass()) {
        for (const auto& chk : c.result.checks)
            if (!chk.pass)
                std::printf("       failed: %s  %s\n", chk.name.c_str(), chk.detail.c_str());
    }
    std::fflush(stdout);
}

} // namespace

int main() {
    BundleOptions opt; // defaults: cap 81, auto workers, no time budget

    std::vector<Criterion> criteria;
    criteria.push_back({"Davenport constants exact on the matrix", verify_davenport(opt)});
    print_line(1, criteria.back());
    criteria.push_back({"daleth(3,3,3) = 4 and certified c = 4", verify_prop_5_5(opt)});
    print_line(2, criteria.back());
    criteria.push_back({"catenary classification matrix with >= 5 evidence", verify_cor_5_6(opt)});
    print_line(3, criteria.back());
    criteria.push_back({"maximal-atom shape over 3,3,3", verify_lemma_5_7_suite(opt)});
    print_line(4, criteria.back());
    criteria.push_back({"worked 3,3 element: Z, catenary, proper subsequences",
                        verify_remark_4_4_3(opt)});
    print_line(5, criteria.back());
    criteria.push_back({"finitely generated example: daleth = c2 = 0, Delta = {1}, c = 4 witness",
                        verify_example_3_3_3(opt)});
    print_line(6, criteria.back());
    criteria.push_back({"equality chain daleth = c2 with attained max Delta",
                        verify_cor_4_3_chain(opt)});
    print_line(7, criteria.back());
    criteria.push_back({"bound sanity: daleth <= tight <= relaxed, c <= thm-4.2",
                        verify_bounds(opt)});
    print_line(8, criteria.back());
    criteria.push_back({"seeded property suites", verify_properties(7, 1000, opt)});
    print_line(9, criteria.back());

    bool all = true;
    long long checks = 0;
    for (const auto& c : criteria) {
        all = all && c.result.pass();
        checks += static_cast<long long>(c.result.checks.size());
    }
    std::printf("%s: %zu criteria, %lld checks\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                criteria.size(), checks);
    return all ? 0 : 1;
}
