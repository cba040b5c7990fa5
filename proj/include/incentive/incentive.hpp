// Copyright 2026 The Authors.
//
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

#ifndef INCENTIVE_INCENTIVE_HPP
#define INCENTIVE_INCENTIVE_HPP

#include "incentive/bilevel.hpp"
#include "incentive/core_model.hpp"
#include "incentive/customer_response.hpp"
#include "incentive/discrete_opt.hpp"
#include "incentive/errors.hpp"
#include "incentive/exchange_graph.hpp"
#include "incentive/flow.hpp"
#include "incentive/majorization.hpp"
#include "incentive/report.hpp"
#include "incentive/satisfaction.hpp"
#include "incentive/scenario_io.hpp"

#endif  // INCENTIVE_INCENTIVE_HPP
