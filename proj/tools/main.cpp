#include "dunk/cli.hpp"

int main(int argc, char** argv) { return dunk::run_cli(argc, argv); }
