#include "cli.hpp"

int main(int argc, char** argv) { return hbem::cli::run(argc, argv); }
