// SPDX-License-Identifier: Apache-2.0
//
// riscat - reconfigurable-surface channel models and scattering patterns
// Copyright (C) 2026 riscat contributors
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

#ifndef RISCAT_RISCAT_HPP
#define RISCAT_RISCAT_HPP

#include "riscat/cell_embedding.hpp"
#include "riscat/conventional.hpp"
#include "riscat/dipole.hpp"
#include "riscat/geometry.hpp"
#include "riscat/impedance.hpp"
#include "riscat/load_optimizer.hpp"
#include "riscat/pattern.hpp"
#include "riscat/runner.hpp"
#include "riscat/scenario.hpp"

#endif  // RISCAT_RISCAT_HPP
