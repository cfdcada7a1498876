#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "effdirac/errors.hpp"

namespace effdirac {

// Quantum numbers of one Dirac-Coulomb bound state. j is carried as the
// integer 2j to keep the type exact. S, when present, selects a hyperfine
// sublevel (total spin 0 or 1).
struct QuantumState {
  int n = 1;        // principal quantum number
  int kappa = -1;   // Dirac quantum number, nonzero, |kappa| <= n
  int two_j = 1;    // 2j = 2|kappa| - 1
  int l_a = 0;      // upper-component orbital quantum number
  int l_b = 1;      // lower-component orbital quantum number
  std::optional<int> S;

  double j() const { return 0.5 * two_j; }
  int n_prime() const { return n - std::abs(kappa); }

  bool operator==(const QuantumState&) const = default;
};

inline QuantumState make_state(int n, int kappa, std::optional<int> S = {}) {
  if (n < 1)
    throw DomainError("n must be >= 1, got " + std::to_string(n));
  if (kappa == 0)
    throw DomainError("kappa must be nonzero");
  if (std::abs(kappa) > n)
    throw DomainError("|kappa| must be <= n, got kappa=" +
                      std::to_string(kappa) + " for n=" + std::to_string(n));
  if (kappa == n)
    throw DomainError("kappa = +n has no bound state (upper-component l would "
                      "reach n)");
  if (S && *S != 0 && *S != 1)
    throw DomainError("S must be 0 or 1, got " + std::to_string(*S));

  QuantumState st;
  st.n = n;
  st.kappa = kappa;
  st.two_j = 2 * std::abs(kappa) - 1;
  if (kappa > 0) {
    st.l_a = kappa;       // j + 1/2
    st.l_b = kappa - 1;   // j - 1/2
  } else {
    st.l_a = -kappa - 1;  // j - 1/2
    st.l_b = -kappa;      // j + 1/2
  }
  st.S = S;
  return st;
}

namespace detail {

inline int letter_to_l(char c) {
  switch (c) {
    case 's': return 0;
    case 'p': return 1;
    case 'd': return 2;
    case 'f': return 3;
  }
  return -1;
}

inline char l_to_letter(int l) {
  constexpr char letters[] = {'s', 'p', 'd', 'f'};
  return (l >= 0 && l < 4) ? letters[l] : '?';
}

}  // namespace detail

// Renders "<n><letter>_{<2j>/2}", e.g. "2s_{1/2}". The letter is the
// upper-component l; supported letters are s, p, d, f.
inline std::string render_label(const QuantumState& st) {
  char letter = detail::l_to_letter(st.l_a);
  if (letter == '?')
    throw DomainError("no spectroscopic letter for l_a = " +
                      std::to_string(st.l_a));
  return std::to_string(st.n) + letter + "_{" + std::to_string(st.two_j) +
         "/2}";
}

// Inverse of render_label. The parsed state carries no S.
inline QuantumState parse_label(std::string_view text) {
  auto fail = [&] {
    throw ParseError("cannot parse state label '" + std::string(text) +
                     "' (expected e.g. \"2s_{1/2}\")");
  };

  size_t i = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == 0 || i >= text.size()) fail();
  int n = std::atoi(std::string(text.substr(0, i)).c_str());

  int l = detail::letter_to_l(text[i]);
  if (l < 0) fail();
  ++i;

  if (text.substr(i, 2) != "_{") fail();
  i += 2;
  size_t j_start = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == j_start) fail();
  int two_j = std::atoi(std::string(text.substr(j_start, i - j_start)).c_str());
  if (text.substr(i) != "/2}") fail();
  if (two_j % 2 == 0 || two_j < 1) fail();

  int kappa;
  if (two_j == 2 * l + 1)
    kappa = -(l + 1);
  else if (two_j == 2 * l - 1)
    kappa = l;
  else
    throw ParseError("state label '" + std::string(text) +
                     "': j inconsistent with the letter (need j = l +- 1/2)");
  return make_state(n, kappa);
}

}  // namespace effdirac
