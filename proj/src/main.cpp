#include "lpradon/cli.hpp"

int main(int argc, char** argv) { return lpr::cli_main(argc, argv); }
