#pragma once

#include "zsum/error.hpp"
#include "zsum/bitset.hpp"
#include "zsum/smith.hpp"
#include "zsum/group.hpp"
#include "zsum/subgroup.hpp"
#include "zsum/symmetry.hpp"
#include "zsum/sequence.hpp"
#include "zsum/reach.hpp"
#include "zsum/zerosum.hpp"
#include "zsum/search.hpp"
#include "zsum/invariants.hpp"
#include "zsum/extremal.hpp"
#include "zsum/suite.hpp"
#include "zsum/io.hpp"
