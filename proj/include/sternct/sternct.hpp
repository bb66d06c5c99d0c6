#pragma once

#include "cache.hpp"
#include "dyadic.hpp"
#include "genfun.hpp"
#include "holonomic.hpp"
#include "integers.hpp"
#include "laurent.hpp"
#include "nu.hpp"
#include "parallel.hpp"
#include "qpoly.hpp"
#include "series.hpp"
#include "stern.hpp"
#include "tpoly.hpp"
#include "transfer.hpp"
