#include <iostream>

#include "laxgrid/acceptance.hpp"

int main() {
    int failed = 0;
    for (auto& s : laxgrid::acceptance::suites()) {
        auto r = s.run();
        std::cout << laxgrid::acceptance::format_line(r) << std::endl;
        if (!r.pass) ++failed;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : std::string("acceptance: all criteria pass"))
              << std::endl;
    return failed ? 1 : 0;
}
