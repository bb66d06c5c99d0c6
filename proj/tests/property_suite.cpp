#include "properties.hpp"

#include <cstdio>
#include <string>

namespace {

int g_failures = 0;

void check(const char* name, const std::string& failure) {
    if (failure.empty()) {
        std::printf("PASS  %s\n", name);
    } else {
        std::printf("FAIL  %s  [%s]\n", name, failure.c_str());
        ++g_failures;
    }
}

}  // namespace

int main() {
    check("constant term invariant under reversal", props::ct_reversal());
    check("constant term vanishes off the support", props::ct_support());
    check("pruned iteration equals unpruned, n <= 60", props::prune_soundness());
    check("solved component symmetric in x -> 1/x", props::component_symmetry());
    check("kernel series supported in [-n, n], n <= 200", props::kernel_support());
    check("assembled values are nonnegative integers", props::assembled_integrality());
    if (g_failures > 0) {
        std::printf("%d propert%s failed\n", g_failures, g_failures == 1 ? "y" : "ies");
        return 1;
    }
    std::printf("all properties hold\n");
    return 0;
}
