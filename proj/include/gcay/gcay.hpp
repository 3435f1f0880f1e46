#pragma once

#include "gcay/errors.hpp"
#include "gcay/modulus.hpp"
#include "gcay/gaussian_ring.hpp"
#include "gcay/characters.hpp"
#include "gcay/congruence_count.hpp"
#include "gcay/cayley_spectrum.hpp"
#include "gcay/graph_analysis.hpp"
#include "gcay/scan.hpp"
