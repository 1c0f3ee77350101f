#include "cnslab/cli.hpp"

int main(int argc, char** argv) { return cnslab::cli_main(argc, argv); }
