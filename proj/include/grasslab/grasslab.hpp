#pragma once

#include "grasslab/bitrow.hpp"
#include "grasslab/cache.hpp"
#include "grasslab/cliques.hpp"
#include "grasslab/error.hpp"
#include "grasslab/gf.hpp"
#include "grasslab/grassmann.hpp"
#include "grasslab/harness.hpp"
#include "grasslab/reguli.hpp"
#include "grasslab/ringline.hpp"
#include "grasslab/subspace.hpp"
