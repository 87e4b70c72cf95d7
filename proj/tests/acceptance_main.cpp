#include <iostream>

#include "spectralflow/acceptance.hpp"

int main() {
  const auto results = spectralflow::run_acceptance();
  const bool ok = spectralflow::report_acceptance(results, std::cout);
  return ok ? 0 : 1;
}
