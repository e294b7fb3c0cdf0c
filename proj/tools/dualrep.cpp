#include "dualrep/cli.hpp"

int main(int argc, char** argv) { return dualrep::cli::run(argc, argv); }
