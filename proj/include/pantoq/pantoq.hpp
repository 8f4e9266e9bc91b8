#pragma once

// Umbrella header for the pantoq library: closed-form machinery for the
// proportional-delay equation y'(x) = alpha y(qx) - y(x) with 0 < q < 1.

#include "pantoq/asymptotics.hpp"
#include "pantoq/connection.hpp"
#include "pantoq/contour.hpp"
#include "pantoq/oracle.hpp"
#include "pantoq/qcore.hpp"
#include "pantoq/series.hpp"
#include "pantoq/types.hpp"
