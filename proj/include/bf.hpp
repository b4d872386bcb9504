#pragma once

#include "bf/barcode.hpp"
#include "bf/bottleneck.hpp"
#include "bf/canonical.hpp"
#include "bf/error.hpp"
#include "bf/geometry.hpp"
#include "bf/random.hpp"
#include "bf/realization.hpp"
#include "bf/swc.hpp"
#include "bf/tmd.hpp"
#include "bf/tns.hpp"
#include "bf/tree.hpp"
