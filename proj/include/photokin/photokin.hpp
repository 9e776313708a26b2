#pragma once

// Umbrella header for the photokin library: photon emission rates, absorption
// cross sections and scattering cross sections for discrete and band
// electronic states in one-dimensional model systems.

#include "photokin/absorption.hpp"
#include "photokin/band_dipoles.hpp"
#include "photokin/band_dos.hpp"
#include "photokin/bound_states.hpp"
#include "photokin/checks.hpp"
#include "photokin/constants.hpp"
#include "photokin/emission.hpp"
#include "photokin/errors.hpp"
#include "photokin/kronig_penney.hpp"
#include "photokin/lineshape.hpp"
#include "photokin/linalg.hpp"
#include "photokin/matrix_elements.hpp"
#include "photokin/polarization.hpp"
#include "photokin/potential.hpp"
#include "photokin/quadrature.hpp"
#include "photokin/recoil.hpp"
#include "photokin/recombination.hpp"
#include "photokin/scan.hpp"
#include "photokin/scattering.hpp"
#include "photokin/scenario.hpp"
#include "photokin/spectrum_table.hpp"
#include "photokin/spin.hpp"
