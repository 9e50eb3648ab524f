#include "sessioncomm/pipeline.hpp"

int main(int argc, char** argv) { return sessioncomm::run_cli(argc, argv); }
