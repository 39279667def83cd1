#pragma once

#include "eht/numeric.hpp"
#include "eht/certified.hpp"
#include "eht/cf.hpp"
#include "eht/circle.hpp"
#include "eht/eht.hpp"
#include "eht/constructors.hpp"
#include "eht/decomp.hpp"
#include "eht/discrepancy.hpp"
#include "eht/io.hpp"
