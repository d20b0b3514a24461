// Prints the high-multiplicity eigenvalues of T^2_60, classifies one of them,
// and shows the four-cosine identity behind it.

#include <iostream>

#include "dtorus/dtorus.hpp"

int main() {
  using namespace dtorus;
  const int n = 60;
  const auto table = torus_spectrum(n, 2);
  std::cout << "T^2_" << n << ": " << table.size() << " distinct eigenvalues, " << table.total_count()
            << " in total\n";
  for (const auto& row : sorted_rows(table)) {
    if (row.entry->count <= 8) continue;
    const auto& rep = row.entry->representative;
    std::cout << "  " << row.value.real.to_string(20) << "  multiplicity " << row.entry->count << "  at ("
              << rep[0] << ", " << rep[1] << ")\n";
  }

  const auto g = eigenvalue_growth(n, 2, {24, 10});
  std::cout << "growth of the eigenvalue at (24, 10): " << to_string(g.tag) << "\n";

  for (const auto& p : find_cos4_partners(n, 24, 10)) {
    const auto [a, b] = vanishing_form_angles(n, p);
    const Quadruple q{Angle(2 * 24, n), Angle(2 * 10, n), a, b};
    const auto c = classify_cos4(q);
    std::cout << "  partner (" << p.first << ", " << p.second << "): cos sum over {" << to_string(q[0]) << ", "
              << to_string(q[1]) << ", " << to_string(a) << ", " << to_string(b) << "} pi vanishes, family "
              << to_string(c.family) << "\n";
  }
}
