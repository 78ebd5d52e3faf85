/// @file mnslab_main.cpp
/// @brief Command-line front end. Subcommands run named experiments and emit
///        JSON summaries plus CSV ledgers; exit code 0 iff all checks pass,
///        1 on a check failure, 2 on usage or configuration errors.

#include <cstdio>

int main() {
  std::printf("mnslab: placeholder\n");
  return 2;
}
