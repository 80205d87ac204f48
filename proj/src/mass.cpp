#include "belyi/mass.hpp"

#include <algorithm>
#include <numeric>

#include "belyi/permutation.hpp"

namespace belyi {

Mass::Mass(Rational value) : value_(std::move(value)) {
  if (value_ < 0) throw InvariantError("mass must be nonnegative");
}

Mass::Mass(BigInt numerator, BigInt denominator) {
  if (denominator <= 0) throw InputError("mass denominator must be positive");
  value_ = Rational(numerator, denominator);
  if (value_ < 0) throw InvariantError("mass must be nonnegative");
}

std::string Mass::to_string() const {
  if (denominator() == 1) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

Mass Mass::parse(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Mass(BigInt(text), 1);
    return Mass(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw InputError("malformed mass '" + text + "'");
  }
}

Mass frobenius_mass(const RamificationScheme& s, const CharacterTable& table) {
  const int n = s.degree();
  if (table.n != n) throw InputError("frobenius_mass: character table degree mismatch");
  const std::size_t c0 = table.class_index(s.lambda0);
  const std::size_t c1 = table.class_index(s.lambda1);
  const std::size_t cinf = table.class_index(s.lambda_inf);
  const std::size_t id = table.identity_class();

  Rational sum = 0;
  for (std::size_t irrep = 0; irrep < table.size(); ++irrep) {
    std::int64_t a = table.at(irrep, c0);
    if (a == 0) continue;
    std::int64_t b = table.at(irrep, c1);
    if (b == 0) continue;
    std::int64_t c = table.at(irrep, cinf);
    if (c == 0) continue;
    BigInt product = BigInt(a) * b * c;
    sum += Rational(product, BigInt(table.at(irrep, id)));
  }
  BigInt nfact = factorial(n);
  Rational prefactor(class_size(s.lambda0) * class_size(s.lambda1) * class_size(s.lambda_inf), nfact * nfact);
  return Mass(prefactor * sum);
}

Mass frobenius_mass(const RamificationScheme& s) {
  return frobenius_mass(s, *character_table(s.degree()));
}

Mass bruteforce_mass(const RamificationScheme& s) {
  const int n = s.degree();
  if (n > kBruteforceMaxDegree) {
    throw ResourceError("oracle budget exceeded: brute force is limited to degree " +
                        std::to_string(kBruteforceMaxDegree));
  }
  const Permutation g0 = canonical_rep(s.lambda0);
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  BigInt count = 0;
  do {
    Permutation g1 = Permutation::from_images(images);
    if (cycle_type(g1) != s.lambda1) continue;
    if (cycle_type(inverse(compose(g0, g1))) == s.lambda_inf) ++count;
  } while (std::next_permutation(images.begin(), images.end()));
  // Every g0 in its class sees the same number of partners.
  BigInt solutions = count * class_size(s.lambda0);
  return Mass(solutions, factorial(n));
}

}  // namespace belyi
