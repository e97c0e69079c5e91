#include <iostream>

#include "rfe/cli.h"

int main(int argc, char** argv) {
  return rfe::dispatch(argc, argv, std::cout, std::cerr);
}
