#ifndef KAFT_KAFT_HPP
#define KAFT_KAFT_HPP

// Umbrella header for the (k,a)-generalised Fourier transform toolkit.

#include "kaft/errors.hpp"
#include "kaft/params.hpp"
#include "kaft/quadrature.hpp"
#include "kaft/symbols.hpp"
#include "kaft/dunkl.hpp"
#include "kaft/basis.hpp"
#include "kaft/transform.hpp"
#include "kaft/inequalities.hpp"
#include "kaft/multiplier.hpp"
#include "kaft/pde.hpp"

#endif  // KAFT_KAFT_HPP
