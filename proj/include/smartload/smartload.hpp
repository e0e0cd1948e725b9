#pragma once

#include "smartload/calendar_date.hpp"
#include "smartload/config.hpp"
#include "smartload/csv.hpp"
#include "smartload/error.hpp"
#include "smartload/featurize.hpp"
#include "smartload/fixture.hpp"
#include "smartload/forest.hpp"
#include "smartload/gbdt.hpp"
#include "smartload/impute.hpp"
#include "smartload/ingest.hpp"
#include "smartload/metrics.hpp"
#include "smartload/model_json.hpp"
#include "smartload/pipeline.hpp"
#include "smartload/rng.hpp"
#include "smartload/stacking.hpp"
#include "smartload/synthetic.hpp"
#include "smartload/tree.hpp"
#include "smartload/tuning.hpp"
