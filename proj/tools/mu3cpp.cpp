#include "mu3cpp/app.hpp"

int main(int argc, char** argv) { return mu3::run_main(argc, argv); }
