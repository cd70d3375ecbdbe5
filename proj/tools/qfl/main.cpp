#include "commands.hpp"

int main(int argc, char** argv) { return qfl::tool::run(argc, argv); }
