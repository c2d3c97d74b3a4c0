#include "mirrorcov/cli.hpp"

int main(int argc, char** argv) { return mirrorcov::run_cli(argc, argv); }
