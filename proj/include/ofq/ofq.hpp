#pragma once

// Umbrella header for the ofq library: analytic queueing models and a
// discrete-event simulator for OpenFlow-style networks of switches behind a
// central controller.

#include "ofq/controller.hpp"
#include "ofq/error.hpp"
#include "ofq/hyperexp.hpp"
#include "ofq/mat2.hpp"
#include "ofq/metrics.hpp"
#include "ofq/network.hpp"
#include "ofq/qbd.hpp"
#include "ofq/rng.hpp"
#include "ofq/scenario_io.hpp"
#include "ofq/sim.hpp"
#include "ofq/stats.hpp"
#include "ofq/sweep.hpp"
#include "ofq/switch_queue.hpp"
