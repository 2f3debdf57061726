#include "rankagg/cli.hpp"

int main(int argc, char** argv) { return rankagg::cli_main(argc, argv); }
