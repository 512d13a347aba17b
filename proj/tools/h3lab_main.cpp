#include "h3lab/cli/dispatch.hpp"

int main(int argc, char** argv) { return h3lab::cli::dispatch(argc, argv); }
