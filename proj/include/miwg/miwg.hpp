#pragma once

// Magnetic-induction waveguide toolkit: coil circuit models, coaxial and
// laterally offset mutual inductance, the exact coupled-network solver, the
// constant-decay chain approximation, and deployment planning on top of
// them. scenario_io.hpp (JSON config parsing, CSV/JSON emission) is kept out
// of this umbrella so library users do not pay for the JSON dependency.

#include <miwg/chain.hpp>
#include <miwg/coil.hpp>
#include <miwg/deployment.hpp>
#include <miwg/errors.hpp>
#include <miwg/mutual.hpp>
#include <miwg/network.hpp>
#include <miwg/sweeps.hpp>
