#include "conexp_cli/app.hpp"

int main(int argc, char** argv) { return conexp::cli::main_entry(argc, argv); }
