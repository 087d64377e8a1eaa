#pragma once

#include "anyondec/bath.hpp"
#include "anyondec/compare.hpp"
#include "anyondec/constants.hpp"
#include "anyondec/errors.hpp"
#include "anyondec/markovian.hpp"
#include "anyondec/ode.hpp"
#include "anyondec/params.hpp"
#include "anyondec/quadrature.hpp"
#include "anyondec/shorttime.hpp"
