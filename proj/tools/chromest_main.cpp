#include "chromest/cli.hpp"

int main(int argc, char** argv) { return chromest::cli::run(argc, argv); }
