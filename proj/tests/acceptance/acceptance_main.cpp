// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failures.
//
// Usage: tvp_acceptance <path-to-tvp-cli> <scratch-dir> [criterion ...]

#include <cstdio>
#include <string>
#include <vector>

int run_all(const std::string& cli, const std::string& scratch,
            const std::vector<int>& only);

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: tvp_acceptance <tvp-cli> <scratch-dir> [criterion ...]\n");
    return 2;
  }
  std::vector<int> only;
  for (int i = 3; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  return run_all(argv[1], argv[2], only);
}
