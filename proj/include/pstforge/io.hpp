#pragma once

#include "pstforge/dynamics.hpp"
#include "pstforge/hamiltonian.hpp"
#include "pstforge/permutation.hpp"
#include "pstforge/solver.hpp"
#include "pstforge/spectral.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace pstforge::io {

using Json = nlohmann::ordered_json;

/// Parse failure with a 1-based line/column location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Throws ParseError on malformed text.
Json parse_json(std::string_view text);

// {"n": int, "image": [int, ...]} with 1-based sites.
Json to_json(const SitePermutation& p);
SitePermutation permutation_from_json(const Json& j);

// {"tau": float, "shifts": [int, ...], "mixing": [{"eigenvalue_index": int, "block": [[[re, im], ...], ...]}, ...]}
Json to_json(const SpectralAssignment& a);
SpectralAssignment assignment_from_json(const Json& j);

// {"n": int, "tau": float, "matrix": [[[re, im], ...], ...]}
Json to_json(const PstHamiltonian& h);
PstHamiltonian hamiltonian_from_json(const Json& j);

// {"residual_max": float, "pass": bool, "tolerance": float}
Json to_json(const PstReport& r);

Json to_json(const NoGoCertificate& c);
Json to_json(const Nn4Amplitudes& a);

/// Parameter table: header "parameter,value,units", one row per E_i and r_i.
void write_design_csv(std::ostream& out, const WireDesign& design);

/// Header "m,P_1,...,P_n,T"; one row per step.
void write_trace_csv(std::ostream& out, const DynamicsTrace& trace);

/// printf("%.12g") formatting used for every CSV float.
std::string format_float(double x);

}  // namespace pstforge::io
