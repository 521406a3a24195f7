#include "cantorvort/cli.hpp"

int main(int argc, char** argv) { return cantorvort::run_command(argc, argv); }
