// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header for the pbcc library.

#ifndef PBCC_PBCC_HPP
#define PBCC_PBCC_HPP

#include "pbcc/types.hpp"
#include "pbcc/numeric.hpp"
#include "pbcc/channel.hpp"
#include "pbcc/rates.hpp"
#include "pbcc/allocator.hpp"
#include "pbcc/oracle.hpp"
#include "pbcc/sim.hpp"
#include "pbcc/cli.hpp"

#endif  // PBCC_PBCC_HPP
