#include "rwalk/cli.hpp"

int main(int argc, char** argv) { return rwalk::run_cli(argc, argv); }
