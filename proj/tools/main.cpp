#include "cvbell/cli.hpp"

int main(int argc, char** argv) { return cvbell::run_cli(argc, argv); }
