#include "threshwet/cli.hpp"

int main(int argc, char** argv) { return threshwet::run_cli(argc, argv); }
