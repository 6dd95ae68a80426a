#pragma once

#include "cohdyn/analysis.hpp"
#include "cohdyn/coherence.hpp"
#include "cohdyn/errors.hpp"
#include "cohdyn/qlinalg.hpp"
#include "cohdyn/reservoir.hpp"
#include "cohdyn/states.hpp"
