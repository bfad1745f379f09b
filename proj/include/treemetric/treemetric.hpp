#pragma once

#include "treemetric/alphabet.hpp"
#include "treemetric/baselines.hpp"
#include "treemetric/bench.hpp"
#include "treemetric/best_match.hpp"
#include "treemetric/completed_tree.hpp"
#include "treemetric/cost_table.hpp"
#include "treemetric/error.hpp"
#include "treemetric/left_regular.hpp"
#include "treemetric/oracle.hpp"
#include "treemetric/ordered_metric.hpp"
#include "treemetric/random.hpp"
#include "treemetric/rational.hpp"
#include "treemetric/report.hpp"
#include "treemetric/tree.hpp"
#include "treemetric/weights.hpp"
