#pragma once

#include "xxz/common.hpp"
#include "xxz/linalg.hpp"
#include "xxz/polynomial.hpp"
#include "xxz/partitions.hpp"
#include "xxz/symfunc.hpp"
#include "xxz/model.hpp"
#include "xxz/oracle.hpp"
#include "xxz/bethe.hpp"
#include "xxz/slavnov.hpp"
#include "xxz/combinatorial.hpp"
#include "xxz/sigmaz.hpp"
#include "xxz/verify.hpp"
#include "xxz/config.hpp"
#include "xxz/report.hpp"
