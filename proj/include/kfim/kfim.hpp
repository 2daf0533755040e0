// Copyright 2026 The kfim-negativity Authors
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

#ifndef KFIM_KFIM_HPP
#define KFIM_KFIM_HPP

#include "kfim/circuit.hpp"
#include "kfim/common.hpp"
#include "kfim/experiment.hpp"
#include "kfim/haar.hpp"
#include "kfim/measures.hpp"
#include "kfim/record.hpp"
#include "kfim/replica.hpp"
#include "kfim/states.hpp"
#include "kfim/verification.hpp"

#endif  // KFIM_KFIM_HPP
