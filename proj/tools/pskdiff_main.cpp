#include "pskdiff/cli.hpp"

int main(int argc, char** argv) { return pskdiff::cli::run_cli(argc, argv); }
