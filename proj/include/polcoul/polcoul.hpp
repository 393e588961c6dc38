#pragma once

#include "polcoul/bessel.hpp"
#include "polcoul/bifurcation.hpp"
#include "polcoul/errors.hpp"
#include "polcoul/heun.hpp"
#include "polcoul/minimize.hpp"
#include "polcoul/ode.hpp"
#include "polcoul/params.hpp"
#include "polcoul/quadrature.hpp"
#include "polcoul/quartic.hpp"
#include "polcoul/radial_ode.hpp"
#include "polcoul/rootfind.hpp"
#include "polcoul/variational.hpp"
