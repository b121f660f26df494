#include "vpol/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return vpol::cli::run(argc, argv, std::cout, std::cerr);
}
