#include "prymlab/cli.hpp"

int main(int argc, char** argv) { return prymlab::cli::main(argc, argv); }
