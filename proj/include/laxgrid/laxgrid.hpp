#pragma once

#include "laxgrid/error.hpp"
#include "laxgrid/rational.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/refined_set.hpp"
#include "laxgrid/permutation.hpp"
#include "laxgrid/twist.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/overlap.hpp"
#include "laxgrid/assignment.hpp"
#include "laxgrid/lax.hpp"
#include "laxgrid/metrics.hpp"
#include "laxgrid/towers.hpp"
#include "laxgrid/entropy.hpp"
#include "laxgrid/spectral.hpp"
#include "laxgrid/extension.hpp"
#include "laxgrid/report.hpp"
