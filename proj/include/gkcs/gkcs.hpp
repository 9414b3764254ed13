#pragma once

#include "gkcs/error.hpp"
#include "gkcs/specfun.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/verification.hpp"
#include "gkcs/spectrum.hpp"
#include "gkcs/coherent.hpp"
#include "gkcs/quantize.hpp"
#include "gkcs/statistics.hpp"
#include "gkcs/geometry.hpp"
#include "gkcs/validation.hpp"
