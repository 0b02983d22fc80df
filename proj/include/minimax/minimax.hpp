#pragma once

#include "minimax/analysis.hpp"
#include "minimax/config.hpp"
#include "minimax/errors.hpp"
#include "minimax/harness.hpp"
#include "minimax/joint_point.hpp"
#include "minimax/oracle.hpp"
#include "minimax/problem.hpp"
#include "minimax/problems.hpp"
#include "minimax/rng.hpp"
#include "minimax/schedule.hpp"
#include "minimax/solvers.hpp"
#include "minimax/version.hpp"
