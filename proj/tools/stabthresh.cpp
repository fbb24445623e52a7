#include "stabthresh/cli.hpp"

int main(int argc, char** argv) { return stabthresh::cli::main(argc, argv); }
