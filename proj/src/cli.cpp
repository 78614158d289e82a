#include "lpradon/cli.hpp"

#include <cstdio>

namespace lpr {

int cli_main(int, char**) {
    std::fputs("lpradon: not implemented yet\n", stderr);
    return 2;
}

}  // namespace lpr
