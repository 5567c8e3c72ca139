#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <cstring>

namespace triecode::testutil {
void set_test_seed(std::uint64_t s);
}

int main(int argc, char** argv) {
    doctest::Context context;
    for (int i = 1; i < argc; ++i) {
        if (std::strncmp(argv[i], "--seed=", 7) == 0)
            triecode::testutil::set_test_seed(std::strtoull(argv[i] + 7, nullptr, 10));
    }
    context.applyCommandLine(argc, argv);
    return context.run();
}
