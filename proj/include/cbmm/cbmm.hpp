#pragma once

#include "cbmm/bitmat.hpp"
#include "cbmm/detector.hpp"
#include "cbmm/errors.hpp"
#include "cbmm/fourruss.hpp"
#include "cbmm/framework.hpp"
#include "cbmm/graph.hpp"
#include "cbmm/io.hpp"
#include "cbmm/oracle.hpp"
#include "cbmm/random.hpp"
#include "cbmm/reduction.hpp"
