#pragma once

// Umbrella header for the double-Delta optical-pumping simulator.

#include "chiralpump/config.hpp"
#include "chiralpump/dynamics.hpp"
#include "chiralpump/errors.hpp"
#include "chiralpump/format.hpp"
#include "chiralpump/hilbert.hpp"
#include "chiralpump/io.hpp"
#include "chiralpump/lindblad.hpp"
#include "chiralpump/model.hpp"
#include "chiralpump/observables.hpp"
#include "chiralpump/steadystate.hpp"
#include "chiralpump/sweep.hpp"
