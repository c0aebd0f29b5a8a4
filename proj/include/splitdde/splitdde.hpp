#pragma once

#include "splitdde/analysis.hpp"
#include "splitdde/config.hpp"
#include "splitdde/csv.hpp"
#include "splitdde/history.hpp"
#include "splitdde/operators.hpp"
#include "splitdde/oracle.hpp"
#include "splitdde/problem.hpp"
#include "splitdde/splitting.hpp"
#include "splitdde/types.hpp"
#include "splitdde/selftest.hpp"
