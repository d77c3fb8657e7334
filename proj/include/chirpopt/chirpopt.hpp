#ifndef CHIRPOPT_CHIRPOPT_HPP
#define CHIRPOPT_CHIRPOPT_HPP

#include "chirpopt/chirplet.hpp"
#include "chirpopt/cwt2d.hpp"
#include "chirpopt/errors.hpp"
#include "chirpopt/field_io.hpp"
#include "chirpopt/grid.hpp"
#include "chirpopt/holofilter.hpp"
#include "chirpopt/metrics.hpp"
#include "chirpopt/pgm.hpp"
#include "chirpopt/propagate.hpp"
#include "chirpopt/scene.hpp"

#endif
