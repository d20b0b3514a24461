#pragma once

#include "dtorus/errors.hpp"
#include "dtorus/cyclotomic.hpp"
#include "dtorus/semigroup.hpp"
#include "dtorus/spectrum.hpp"
#include "dtorus/vanishing.hpp"
#include "dtorus/criteria.hpp"
#include "dtorus/zeta.hpp"
