#pragma once

#include "araf/bench.hpp"
#include "araf/csv.hpp"
#include "araf/data_model.hpp"
#include "araf/discretizer.hpp"
#include "araf/error.hpp"
#include "araf/feature_gen.hpp"
#include "araf/io.hpp"
#include "araf/miner.hpp"
#include "araf/parallel.hpp"
#include "araf/random.hpp"
#include "araf/rules.hpp"
#include "araf/sampler.hpp"
