// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include "passisac/core_model.hpp"
#include "passisac/monte_carlo.hpp"
#include "passisac/multi_pinch.hpp"
#include "passisac/outer_bound.hpp"
#include "passisac/region.hpp"
#include "passisac/rng.hpp"
#include "passisac/sensing.hpp"
#include "passisac/single_pinch.hpp"
