#pragma once

// Umbrella header for the quantum-plane toolkit: normally ordered arithmetic
// in CQ_q(theta, thetabar), weighted inner products, the reproducing-kernel
// projection, and truncated Toeplitz operators.

#include "qplane/bargmann.hpp"
#include "qplane/element.hpp"
#include "qplane/errors.hpp"
#include "qplane/matrix.hpp"
#include "qplane/pairing.hpp"
#include "qplane/parse.hpp"
#include "qplane/scalar.hpp"
#include "qplane/serialize.hpp"
#include "qplane/toeplitz.hpp"
#include "qplane/weights.hpp"
