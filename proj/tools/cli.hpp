#pragma once

#include <iosfwd>

namespace conecalc::cli {

  // Exit statuses.  Precondition and parse failures are the caller's fault;
  // anything else is a bug.
  inline constexpr int exit_ok           = 0;
  inline constexpr int exit_internal     = 1;
  inline constexpr int exit_precondition = 2;

  // Runs one command line.  Result records go to `out` as one JSON object per
  // line; diagnostics go to `err`.  Input words come from the positional
  // arguments, or from `in` one per line when there are none.
  int run(int argc, char const* const* argv, std::istream& in, std::ostream& out,
          std::ostream& err);

}  // namespace conecalc::cli
