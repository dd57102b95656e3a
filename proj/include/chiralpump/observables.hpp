#pragma once

#include <cmath>

#include "chiralpump/hilbert.hpp"

namespace chiralpump {

/// Diagonal entry <s|rho|s>. A tiny imaginary residue (<= 1e-10) from
/// integration roundoff is discarded; anything larger signals a corrupt state.
inline double population(const DensityMatrix& rho, StateLabel s) {
  if (!in_basis(s, rho.dim()))
    throw PhysicsError(std::string("label outside basis: ") + label_name(s));
  const Complex p = rho.op.at(s, s);
  if (std::abs(p.imag()) > 1e-10)
    throw PhysicsError(std::string("population of ") + label_name(s) +
                       " has imaginary residue " + std::to_string(p.imag()) +
                       "; state is corrupt");
  return p.real();
}

inline constexpr double excess_denominator_floor = 1e-12;

/// Enantiomeric excess over the chiral ground states,
/// eps = |P_1L - P_1R| / (P_1L + P_1R), in [0, 1].
inline double enantiomeric_excess(const DensityMatrix& rho) {
  const double pl = population(rho, StateLabel::G_L);
  const double pr = population(rho, StateLabel::G_R);
  const double denom = pl + pr;
  if (denom <= excess_denominator_floor)
    throw PhysicsError(
        "enantiomeric excess undefined: both chiral ground states are empty "
        "(P_1L + P_1R <= 1e-12)");
  return std::abs(pl - pr) / denom;
}

/// Non-throwing variant for time-series assembly; NaN when undefined or the
/// diagonal has drifted off the real axis.
inline double enantiomeric_excess_or_nan(const Matrix& rho) {
  const double pl = rho(index_of(StateLabel::G_L), index_of(StateLabel::G_L)).real();
  const double pr = rho(index_of(StateLabel::G_R), index_of(StateLabel::G_R)).real();
  const double denom = pl + pr;
  if (!(denom > excess_denominator_floor)) return std::nan("");
  return std::abs(pl - pr) / denom;
}

}  // namespace chiralpump
