// Copyright 2026 The heatnet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEATNET_HPP_
#define HEATNET_HPP_

#include "heatnet/baseline.hpp"
#include "heatnet/costs.hpp"
#include "heatnet/ingest.hpp"
#include "heatnet/knapsack.hpp"
#include "heatnet/load_series.hpp"
#include "heatnet/metrics.hpp"
#include "heatnet/neighborhoods.hpp"
#include "heatnet/network.hpp"
#include "heatnet/plan_io.hpp"
#include "heatnet/planner.hpp"
#include "heatnet/scenario.hpp"
#include "heatnet/scenario_io.hpp"
#include "heatnet/synthetic.hpp"
#include "heatnet/types.hpp"

#endif  // HEATNET_HPP_
