#pragma once

#include "saqc/error.hpp"
#include "saqc/random.hpp"
#include "saqc/sat.hpp"
#include "saqc/dimacs.hpp"
#include "saqc/hamiltonians.hpp"
#include "saqc/spectral.hpp"
#include "saqc/dynamics.hpp"
#include "saqc/experiments.hpp"
