#include "qsearch/cli.hpp"

int main(int argc, char** argv) { return qsearch::cli::run_cli(argc, argv); }
