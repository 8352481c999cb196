#include "fockbench/cli.hpp"

int main(int argc, char** argv) { return fockbench::cli::run(argc, argv); }
