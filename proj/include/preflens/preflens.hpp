// Umbrella header: the full preference-dissection library.
#pragma once

#include "preflens/analytics.hpp"
#include "preflens/config.hpp"
#include "preflens/data.hpp"
#include "preflens/diagnostics.hpp"
#include "preflens/features.hpp"
#include "preflens/fit.hpp"
#include "preflens/judge.hpp"
#include "preflens/judges.hpp"
#include "preflens/logistic.hpp"
#include "preflens/manipulate.hpp"
#include "preflens/nuts.hpp"
#include "preflens/properties.hpp"
#include "preflens/rng.hpp"
#include "preflens/ratings.hpp"
#include "preflens/report.hpp"
#include "preflens/synth.hpp"
