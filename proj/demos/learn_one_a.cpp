// Learns b+ | b*ab* from its length-lex presentation under "same number of
// a's, counting up to 1", then shows that kl:1,1 cannot learn it.
#include <iostream>

#include "relsub/relsub.hpp"

using namespace relsub;

int main() {
  Cfg target = parse_grammar(R"(
S -> B | 'a' | B 'a' | 'a' B | B 'a' B
B -> 'b' B | 'b'
)");
  const Alphabet& sigma = target.alphabet();

  auto count = make_count(U'a', 1, sigma);
  auto rep = run_convergence(target, count, 6, 12);
  std::cout << "count:a,1\n" << to_text(rep) << print_grammar(*rep.final_hypothesis) << '\n';

  auto kl = make_kl(1, 1, sigma);
  auto verdict = check_substitutable(enumerate(target, 8), kl);
  if (verdict.violation) {
    const Violation& v = *verdict.violation;
    std::cout << "kl:1,1 is violated by " << to_utf8(v.x) << " ~ " << to_utf8(v.y) << ": both fit ("
              << to_utf8(v.shared.left) << ", " << to_utf8(v.shared.right) << ") but only " << to_utf8(v.x) << " fits ("
              << to_utf8(v.distinguishing.left) << ", " << to_utf8(v.distinguishing.right) << ")\n";
  }
}
