#pragma once

// Umbrella header.

#include "qsteer/canonical.hpp"
#include "qsteer/ensembles.hpp"
#include "qsteer/entanglement.hpp"
#include "qsteer/errors.hpp"
#include "qsteer/io.hpp"
#include "qsteer/jacobi.hpp"
#include "qsteer/matrix.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/scan.hpp"
#include "qsteer/state.hpp"
#include "qsteer/steering.hpp"
#include "qsteer/tradeoff.hpp"
