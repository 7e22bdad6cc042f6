#include "cli.hpp"

int main(int argc, char** argv) { return locus::cli::run(argc, argv); }
