#include <iostream>

#include "cdepth/cli.hpp"

int main(int argc, char** argv)
{
    return cdepth::cli::run(argc, argv, std::cout, std::cerr);
}
