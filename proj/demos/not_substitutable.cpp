// S -> aSS | b is not ~-substitutable for any recognizable ~: for each
// relation, find two related factors b^N a^N and b^(N+k) a^(N+k) and the
// strings that show the language treats them differently.
#include <iostream>

#include "relsub/relsub.hpp"

using namespace relsub;

int main(int argc, char** argv) {
  const Alphabet sigma{U'a', U'b'};
  std::vector<std::string> specs{"trivial", "kl:1,1", "kl:2,3", "count:a,2", "product:(kl:1,1;count:b,1)"};
  if (argc > 1) specs.assign(argv + 1, argv + argc);
  for (const auto& spec : specs) {
    auto r = parse_relation_spec(spec, sigma);
    std::cout << "== " << spec << " (" << r.morphism().reachable().size() << " reachable elements)\n";
    if (auto w = find_claim5_witness(r, 8))
      std::cout << to_text(*w);
    else
      std::cout << "no witness with N, k <= 8\n";
  }
}
