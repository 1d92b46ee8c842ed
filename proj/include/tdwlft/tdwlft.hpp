#pragma once

// Umbrella header.

#include "tdwlft/checkpoint.hpp"
#include "tdwlft/data_io.hpp"
#include "tdwlft/error.hpp"
#include "tdwlft/eval.hpp"
#include "tdwlft/format.hpp"
#include "tdwlft/loss.hpp"
#include "tdwlft/model.hpp"
#include "tdwlft/random.hpp"
#include "tdwlft/tensor.hpp"
#include "tdwlft/trainer.hpp"
