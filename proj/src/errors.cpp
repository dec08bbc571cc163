#include "pstforge/errors.hpp"

namespace pstforge {

const char* to_string(NoSolutionReason reason) {
  switch (reason) {
    case NoSolutionReason::kIntervalsDisjoint: return "intervals_disjoint";
    case NoSolutionReason::kAmplitudeOutOfRange: return "amplitude_out_of_range";
    case NoSolutionReason::kBrokenNetwork: return "broken_network";
    case NoSolutionReason::kNotConverged: return "not_converged";
  }
  return "unknown";
}

}  // namespace pstforge
