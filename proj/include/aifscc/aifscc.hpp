#pragma once

#include "aifscc/baseline_policies.hpp"
#include "aifscc/closed_loop_sim.hpp"
#include "aifscc/efe_planner.hpp"
#include "aifscc/errors.hpp"
#include "aifscc/gaussian.hpp"
#include "aifscc/objective.hpp"
#include "aifscc/sensing_model.hpp"
#include "aifscc/uav_model.hpp"
#include "aifscc/vfe_estimator.hpp"
