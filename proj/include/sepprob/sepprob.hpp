#pragma once

#include "sepprob/catalog.hpp"
#include "sepprob/checkpoint_io.hpp"
#include "sepprob/constants.hpp"
#include "sepprob/criteria.hpp"
#include "sepprob/estimator.hpp"
#include "sepprob/exact.hpp"
#include "sepprob/linalg.hpp"
#include "sepprob/normal.hpp"
#include "sepprob/plot.hpp"
#include "sepprob/qrng.hpp"
#include "sepprob/report.hpp"
#include "sepprob/rmt.hpp"
