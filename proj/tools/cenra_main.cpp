#include "cenra/cli.hpp"

int main(int argc, char** argv) { return cenra::cli_run(argc, argv); }
