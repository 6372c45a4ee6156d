// Applies both reduced words of w0 in I(5) to one random path and prints the gap.

#include <cstdio>

#include "plcrystal/random.hpp"
#include "plcrystal/stringparam.hpp"

int main() {
  plc::Realization r = plc::build_realization("I(5)");
  plc::Rng rng(2024);
  plc::PLPath eta = plc::random_path(r.dim, 12, rng);

  plc::PLPath a = plc::pitman_word(r, {0, 1, 0, 1, 0}, eta);
  plc::PLPath b = plc::pitman_word(r, {1, 0, 1, 0, 1}, eta);
  std::printf("segments in: %zu, out: %zu / %zu\n", eta.size() - 1, a.size() - 1, b.size() - 1);
  std::printf("sup distance between the two products: %.3e\n", plc::sup_distance(a, b));

  plc::Vec x = plc::string_coords(r, r.w0, eta);
  std::printf("string coordinates along w0:");
  for (Eigen::Index k = 0; k < x.size(); ++k) std::printf(" %.4f", x[k]);
  std::printf("\n");
  return 0;
}
