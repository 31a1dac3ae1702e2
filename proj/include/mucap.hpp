// SPDX-License-Identifier: Apache-2.0
//
// mucap: MU-MIMO ergodic sum-rate capacity simulation and analysis
// Copyright (C) 2026 The mucap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MUCAP_MUCAP_HPP
#define MUCAP_MUCAP_HPP

#include "mucap/analytic.hpp"
#include "mucap/channel.hpp"
#include "mucap/correlation.hpp"
#include "mucap/error.hpp"
#include "mucap/laplace.hpp"
#include "mucap/rng.hpp"
#include "mucap/runner.hpp"
#include "mucap/specfun.hpp"
#include "mucap/statfit.hpp"
#include "mucap/system_config.hpp"
#include "mucap/zf.hpp"

#endif  // MUCAP_MUCAP_HPP
