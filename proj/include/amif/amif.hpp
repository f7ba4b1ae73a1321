#pragma once

#include "amif/bench.hpp"
#include "amif/classifier.hpp"
#include "amif/embedding.hpp"
#include "amif/engine.hpp"
#include "amif/error.hpp"
#include "amif/histogram.hpp"
#include "amif/ingest.hpp"
#include "amif/monitor.hpp"
#include "amif/quantizer.hpp"
#include "amif/replay.hpp"
#include "amif/rossler.hpp"
#include "amif/signals.hpp"
#include "amif/surrogate.hpp"
