#include "zenosq/scan.hpp"

int main(int argc, char** argv) { return zenosq::run_cli(argc, argv); }
