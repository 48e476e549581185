#include "siri/cli.hpp"

int main(int argc, char** argv) { return siri::cli_main(argc, argv); }
