// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion on stdout, timings on
// stderr. The run as a whole succeeds when the failing criteria are exactly
// the known deviations listed below and every failure line is one of the
// documented counterexamples (see README, "Known deviations"). A known
// deviation that starts passing also fails the run, so the list stays honest.

#include <hopfrep/acceptance.hpp>

#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

using namespace hopfrep;

namespace {

const std::map<int, std::vector<std::regex>>& known_deviations() {
    static const std::map<int, std::vector<std::regex>> k{
        // indecomposability criteria that are wrong as stated
        {4,
         {std::regex(R"(^A a Jordan block, B of size 2: displayed F\(j=4,i=\d+,n=\d+,a=1\) satisfies gy \+ yg = 0 expected true$)"),
          std::regex(R"(^A a Jordan block plus a line: n=\d+ as stated expected true$)"),
          std::regex(R"(^A a Jordan block plus a line: H3\(n=\d+,b=[-0-9/]+\) expected true$)"),
          std::regex(R"(^A with t equal Jordan blocks, p = 1: r=\d+,t=\d+ as stated expected true$)")}},
        // index range of the F and H3 tables, missing dimension 4 and 5 families
        {5,
         {std::regex(R"(^F\(j=[468],.*\): F[468] needs i = n-3; .*$)"),
          std::regex(R"(^H3\(.*\): splits into 2 summands$)"),
          std::regex(R"(^random dim [45] summand unclassified\(n=[45]\) \[.*\] End local$)")}},
        // diagonal Ext1 between one-dimensional H and Hbar modules is 2
        {7, {std::regex(R"(^Ext1_(H|Hbar)\((k\([^)]*\)), \2\) has dim 2$)")}},
    };
    return k;
}

bool matches_known(int id, const std::string& failure) {
    auto it = known_deviations().find(id);
    if (it == known_deviations().end()) return false;
    for (auto& re : it->second)
        if (std::regex_match(failure, re)) return true;
    return false;
}

}  // namespace

int main() {
    Options opt{resolve_seed(0)};
    AcceptanceReport rep = run_acceptance(opt, &std::cerr);
    std::cout << rep.text();

    bool ok = true;
    for (auto& c : rep.criteria) {
        bool known = known_deviations().count(c.id) != 0;
        if (c.ok && known) {
            std::cout << "unexpected pass of criterion " << c.id << "; update the known deviations\n";
            ok = false;
        }
        if (c.ok) continue;
        if (!known) {
            ok = false;
            continue;
        }
        for (auto& f : c.failures)
            if (!matches_known(c.id, f)) {
                std::cout << "new failure in criterion " << c.id << ": " << f << "\n";
                ok = false;
            }
    }
    std::cout << (ok ? "acceptance: failures match the known deviations\n" : "acceptance: unexpected result\n");
    return ok ? 0 : 1;
}
