#include "polyia/cli.hpp"

int main(int argc, char** argv) { return polyia::run_cli(argc, argv); }
