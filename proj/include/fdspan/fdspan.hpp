#pragma once

#include "fdspan/graph.hpp"
#include "fdspan/rng.hpp"
#include "fdspan/io.hpp"
#include "fdspan/paths.hpp"
#include "fdspan/conductance.hpp"
#include "fdspan/generators.hpp"
#include "fdspan/fault.hpp"
#include "fdspan/lp.hpp"
#include "fdspan/lbc.hpp"
#include "fdspan/greedy_spanner.hpp"
#include "fdspan/cluster_spanner.hpp"
#include "fdspan/expander_cert.hpp"
#include "fdspan/report.hpp"
