#pragma once

#include "lpoly/errors.hpp"
#include "lpoly/rational.hpp"
#include "lpoly/power_poly.hpp"
#include "lpoly/sturm.hpp"
#include "lpoly/lorentz_form.hpp"
#include "lpoly/quadrature.hpp"
#include "lpoly/norms.hpp"
#include "lpoly/classes.hpp"
#include "lpoly/verify.hpp"
#include "lpoly/search.hpp"
#include "lpoly/serialize.hpp"
