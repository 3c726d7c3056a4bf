// Copyright 2026 The fairins Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Umbrella header.

#ifndef FAIRINS_FAIRINS_HPP
#define FAIRINS_FAIRINS_HPP

#include "fairins/errors.hpp"
#include "fairins/prob_space.hpp"
#include "fairins/certificate.hpp"
#include "fairins/distortion.hpp"
#include "fairins/valuation.hpp"
#include "fairins/liability.hpp"
#include "fairins/enumeration.hpp"
#include "fairins/game.hpp"
#include "fairins/contracts.hpp"
#include "fairins/state_payoffs.hpp"
#include "fairins/portfolio.hpp"
#include "fairins/report.hpp"

#endif  // FAIRINS_FAIRINS_HPP
