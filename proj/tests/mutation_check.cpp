// Built against a library with a corrupted log-gamma constant; passes only
// if the self-test names the broken check.
#include "hstcn/cli.hpp"

#include <cstdio>

int main() {
    bool caught = false;
    for (const auto& c : hstcn::cli::check_specfun()) {
        std::printf("[%s] %s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        if (!c.pass && c.name.rfind("specfun.loggamma", 0) == 0) caught = true;
    }
    std::printf("%s\n", caught ? "mutation detected" : "mutation NOT detected");
    return caught ? 0 : 1;
}
