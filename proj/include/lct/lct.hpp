#pragma once

#include "lct/constants.hpp"
#include "lct/errors.hpp"
#include "lct/expression.hpp"
#include "lct/families.hpp"
#include "lct/generating_function.hpp"
#include "lct/hamilton_jacobi.hpp"
#include "lct/kernel.hpp"
#include "lct/potential.hpp"
#include "lct/schrodinger.hpp"
#include "lct/symplectic.hpp"
#include "lct/wavefunction.hpp"
