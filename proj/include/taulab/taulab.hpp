#pragma once

#include "taulab/rational.hpp"
#include "taulab/matrix.hpp"
#include "taulab/parallel.hpp"
#include "taulab/partitions.hpp"
#include "taulab/symfunc.hpp"
#include "taulab/characters.hpp"
#include "taulab/hurwitz.hpp"
#include "taulab/ribbon.hpp"
#include "taulab/wick.hpp"
#include "taulab/ginibre.hpp"
#include "taulab/tau.hpp"
