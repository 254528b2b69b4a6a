#ifndef HYPERLADDER_TESTS_FIXTURES_HPP
#define HYPERLADDER_TESTS_FIXTURES_HPP

#include <hyperladder/family.hpp>

#include <vector>

namespace fixtures {

/// The five families the acceptance criteria quantify over.
inline std::vector<hyperladder::Family> presets() {
  using namespace hyperladder;
  return {presets::legendre(), presets::jacobi(Rational(1, 2), Rational(1, 2)),
          presets::jacobi(Rational(3, 2), Rational(3, 2)), presets::laguerre(0), presets::hermite()};
}

} // namespace fixtures

#endif
