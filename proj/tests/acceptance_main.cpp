// Acceptance gate: one line of output per criterion, [PASS]/[FAIL] verdicts,
// exit 1 when any selected criterion fails. Tolerances live in the library's
// verify suites; this binary only selects, filters, and reports.
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <gul/verify.hpp>

namespace {

using gul::verify::CheckLine;
using gul::verify::SuiteReport;

// Criteria 5 and 6 share one statistical run; cache it.
const SuiteReport& poisson_report() {
    static SuiteReport rep = gul::verify::run_suite("poisson");
    return rep;
}

std::vector<CheckLine> lines_with_prefix(const SuiteReport& rep, const char* prefix) {
    std::vector<CheckLine> out;
    for (const auto& l : rep.lines)
        if (l.name.rfind(prefix, 0) == 0) out.push_back(l);
    return out;
}

struct Criterion {
    int id;
    const char* label;
    std::function<std::vector<CheckLine>()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "cut-crossing formulas",
         [] { return gul::verify::run_suite("formula-exact").lines; }},
        {2, "inequalities and remainder bounds",
         [] { return gul::verify::run_suite("inequality-exact").lines; }},
        {3, "enumeration vs monte carlo",
         [] { return gul::verify::run_suite("oracle-equivalence").lines; }},
        {4, "connectivity oracle",
         [] { return gul::verify::run_suite("connectivity-oracle").lines; }},
        {5, "connectivity threshold",
         [] { return lines_with_prefix(poisson_report(), "connected@"); }},
        {6, "isolated-vertex poisson law",
         [] { return lines_with_prefix(poisson_report(), "eta1-tv@"); }},
        {7, "occupancy pmf approximation",
         [] { return gul::verify::run_suite("degree-approx").lines; }},
        {8, "step-size-two regime",
         [] { return gul::verify::run_suite("step-size-a").lines; }},
        {9, "byte determinism", [] { return gul::verify::determinism_report().lines; }},
    };
    return all;
}

// Exactly one report line per criterion. Pass: count (plus the single
// check's numbers when there is only one). Fail: every failing check folded
// in with its detail.
bool report(const Criterion& c) {
    std::vector<CheckLine> lines;
    try {
        lines = c.run();
    } catch (const std::exception& e) {
        std::printf("[FAIL] criterion %d (%s): error: %s\n", c.id, c.label, e.what());
        return false;
    }
    if (lines.empty()) {
        std::printf("[FAIL] criterion %d (%s): suite produced no checks\n", c.id, c.label);
        return false;
    }
    bool pass = true;
    std::string fails;
    for (const auto& l : lines)
        if (!l.pass) {
            pass = false;
            if (!fails.empty()) fails += "; ";
            fails += l.name + ": " + l.detail;
        }
    if (pass) {
        std::string detail = lines.size() == 1
                                 ? lines[0].name + ": " + lines[0].detail
                                 : std::to_string(lines.size()) + " checks passed";
        std::printf("[PASS] criterion %d (%s): %s\n", c.id, c.label, detail.c_str());
        return true;
    }
    std::printf("[FAIL] criterion %d (%s): %s\n", c.id, c.label, fails.c_str());
    return false;
}

int usage(const char* argv0) {
    std::fprintf(stderr,
                 "usage: %s [--criterion N]... [--list]\n"
                 "  --criterion N   run only criterion N (1..9, repeatable)\n"
                 "  --list          list criteria and exit\n"
                 "default: run all criteria\n",
                 argv0);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : criteria()) std::printf("%d: %s\n", c.id, c.label);
            return 0;
        }
        if (std::strcmp(argv[i], "--criterion") == 0) {
            if (i + 1 >= argc) return usage(argv[0]);
            char* end = nullptr;
            long v = std::strtol(argv[++i], &end, 10);
            if (end == nullptr || *end != '\0' || v < 1 ||
                v > static_cast<long>(criteria().size()))
                return usage(argv[0]);
            selected.insert(static_cast<int>(v));
            continue;
        }
        return usage(argv[0]);
    }

    bool all_pass = true;
    for (const auto& c : criteria()) {
        if (!selected.empty() && selected.count(c.id) == 0) continue;
        if (!report(c)) all_pass = false;
    }
    return all_pass ? 0 : 1;
}
