#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "indexdens/chargroup.hpp"

namespace indexdens {

// Character selectors: "principal", "exps:c1,c2,...", or "pin:g=v[,g=v,...]"
// with v one of 1, -1, i, -i, e(k/m).  Throws if nothing (or more than one
// character) matches.
DirichletCharacter resolve_character(const CharacterGroup& G, const std::string& selector);

struct VerifyEntry {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  double delta = 0.0;
  bool pass = false;
};

// Validation against the bundled reference tables.  which is one of
// "table2" (the B_chi(1) constants for d = 5), "table1-theoretical",
// "table1-empirical" (counts up to x), or "table1" (both halves).
std::vector<VerifyEntry> verify_table(const std::string& which, std::uint64_t x, int threads);

// Full command-line entry point: args excludes the program name and is in
// natural order.  Returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace indexdens
