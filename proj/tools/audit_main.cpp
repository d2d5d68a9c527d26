#include "synthaudit/cli/app.hpp"

int main(int argc, char** argv) { return synthaudit::cli::run(argc, argv); }
