#pragma once

#include "qinfo/bloch.hpp"
#include "qinfo/coherence.hpp"
#include "qinfo/entanglement.hpp"
#include "qinfo/entropy.hpp"
#include "qinfo/matrix.hpp"
#include "qinfo/measurement.hpp"
#include "qinfo/random.hpp"
#include "qinfo/report.hpp"
#include "qinfo/state_io.hpp"
#include "qinfo/states.hpp"
#include "qinfo/witness.hpp"
