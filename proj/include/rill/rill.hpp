// rill.hpp: umbrella header.

#pragma once

#include "rill/adaptive_random_forest.hpp"
#include "rill/adwin.hpp"
#include "rill/bagging.hpp"
#include "rill/baselines.hpp"
#include "rill/classifier.hpp"
#include "rill/config.hpp"
#include "rill/csv_stream.hpp"
#include "rill/errors.hpp"
#include "rill/experiment.hpp"
#include "rill/hoeffding_tree.hpp"
#include "rill/instance.hpp"
#include "rill/knn.hpp"
#include "rill/linear.hpp"
#include "rill/metrics.hpp"
#include "rill/naive_bayes.hpp"
#include "rill/prequential.hpp"
#include "rill/random.hpp"
#include "rill/registry.hpp"
#include "rill/report.hpp"
#include "rill/running_stats.hpp"
#include "rill/standardizer.hpp"
#include "rill/synthetic.hpp"
#include "rill/version.hpp"
#include "rill/voting.hpp"
#include "rill/weighted_majority.hpp"
