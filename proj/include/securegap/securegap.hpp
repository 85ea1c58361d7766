// Copyright 2026 The securegap Authors
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

#ifndef SECUREGAP_SECUREGAP_HPP_
#define SECUREGAP_SECUREGAP_HPP_

#include "securegap/bench.hpp"
#include "securegap/bit_source.hpp"
#include "securegap/dataset.hpp"
#include "securegap/errors.hpp"
#include "securegap/mechanism.hpp"
#include "securegap/rational.hpp"
#include "securegap/sampling.hpp"
#include "securegap/scaled.hpp"
#include "securegap/selection.hpp"
#include "securegap/statistics.hpp"
#include "securegap/verification.hpp"

#endif  // SECUREGAP_SECUREGAP_HPP_
