#pragma once

// Umbrella header: C1 Hermite interpolation by piecewise polynomials of
// Argyris type on planar domains bounded by conic arcs, with homogeneous
// boundary conditions.

#include "conic_argyris/conic.hpp"
#include "conic_argyris/core.hpp"
#include "conic_argyris/interpolator.hpp"
#include "conic_argyris/io.hpp"
#include "conic_argyris/linalg.hpp"
#include "conic_argyris/mesh.hpp"
#include "conic_argyris/nodal.hpp"
#include "conic_argyris/norms.hpp"
#include "conic_argyris/poly.hpp"
#include "conic_argyris/quadrature.hpp"
#include "conic_argyris/study.hpp"
#include "conic_argyris/test_functions.hpp"
