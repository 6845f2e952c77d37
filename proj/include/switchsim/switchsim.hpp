#pragma once

// N-channel quantum switch toolkit: Kraus-summation and closed-form
// evaluators, wiring-diagram loop oracle, order-set optimisation, Holevo
// quantities, and the cross-check battery tying them together.

#include "switchsim/channels.hpp"
#include "switchsim/complex_matrix.hpp"
#include "switchsim/diagram.hpp"
#include "switchsim/json_io.hpp"
#include "switchsim/optimizer.hpp"
#include "switchsim/perm.hpp"
#include "switchsim/switch_bruteforce.hpp"
#include "switchsim/switch_fast.hpp"
#include "switchsim/switch_output.hpp"
#include "switchsim/verification.hpp"
