/*  Copyright 2026 The sparse-recovery Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.  */

#pragma once

#include "recovery/error.hpp"
#include "recovery/core.hpp"
#include "recovery/dense_linalg.hpp"
#include "recovery/lp.hpp"
#include "recovery/decoders.hpp"
#include "recovery/verify.hpp"
#include "recovery/bench/problem.hpp"
#include "recovery/bench/experiment.hpp"
#include "recovery/bench/plot.hpp"
