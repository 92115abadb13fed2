#pragma once

#include "certified.hpp"
#include "clifford.hpp"
#include "differential_operator.hpp"
#include "hypergeometric.hpp"
#include "hypergeometric_eval.hpp"
#include "identities.hpp"
#include "iso.hpp"
#include "power_series.hpp"
#include "rational.hpp"
#include "scan.hpp"
#include "solver.hpp"
