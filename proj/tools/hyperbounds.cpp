#include "hyperbounds/cli.hpp"

int main(int argc, char** argv) { return hyperbounds::cli_main(argc, argv); }
