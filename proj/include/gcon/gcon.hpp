#pragma once

#include "numeric.hpp"
#include "symcore.hpp"
#include "latops.hpp"
#include "conifold.hpp"
#include "toda.hpp"
#include "gal.hpp"
#include "vertex.hpp"
#include "config.hpp"
#include "report.hpp"
#include "suite.hpp"
