#include "spinstar/cli.hpp"

int main(int argc, char** argv) { return spinstar::cli_main(argc, argv); }
