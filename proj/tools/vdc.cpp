#include "vdc_cli.hpp"

int main(int argc, char** argv) { return vdc::cli::run(argc, argv); }
