#include "spingr/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return spingr::cli_main(argc, argv, std::cout, std::cerr);
}
